// Named DGLAs and coefficient rings used throughout the tests, the
// acceptance suite and the CLI (`builtin:NAME`).
#pragma once

#include "dgla/artin.hpp"
#include "dgla/dgla.hpp"

#include <string>
#include <vector>

namespace dgla::fixtures {

/// L^1 = 𝕂u, zero bracket and differential.
DglaPtr abel1();
/// L^0 = 𝕂c, L^1 = 𝕂u, dc = u, zero bracket.
DglaPtr d2();
/// L^1 = 𝕂e, L^2 = 𝕂f, [e,e] = f, d = 0.
DglaPtr qobs();
/// End(𝕂^2) in degrees 1..4 with the J-twisted differentials.
DglaPtr cplx2();
/// Hochschild cochains of 𝕂[x]/(x^2) in degrees 0..3.
DglaPtr hw2();
/// Polyvector fields on 𝕂[x,y]/(degree > 1).
DglaPtr poly();

/// Builtin names: ABEL1, D2, QOBS, CPLX2, HW2, POLY, and NAME_d for the
/// L_d extension of each.
std::vector<std::string> dgla_names();
DglaPtr dgla(const std::string &name);

ArtinPtr eps();       // 𝕂[ε]/(ε^2)
ArtinPtr t3();        // 𝕂[t]/(t^3)
ArtinPtr t4();        // 𝕂[t]/(t^4)
ArtinPtr xy_square(); // 𝕂[x,y]/(x^2, xy, y^2)
ArtinPtr x2y2();      // 𝕂[x,y]/(x^2, y^2)

/// Builtin ring names: eps, t3, t4, xy, x2y2.
std::vector<std::string> ring_names();
ArtinPtr ring(const std::string &name);

} // namespace dgla::fixtures

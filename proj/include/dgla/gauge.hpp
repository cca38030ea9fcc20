// Gauge action of exp(L^0 ⊗ m_A) on L^1 ⊗ m_A, the Iso obstruction
// calculus over small extensions, and the étale/isomorphism criterion for
// morphisms of DGLAs.
//
// Sign convention: e^a * x = x + Σ_{n≥0} (ad a)^n ([a,x] - da) / (n+1)!,
// i.e. exp(ad a)(x + d) - d inside L_d with [a,d] = -da.  To first order
// the action of b ⊗ ε is the translation x ↦ x - db.
#pragma once

#include "dgla/maurer_cartan.hpp"

#include <map>

namespace dgla {

/// e^a * x for a ∈ L^0 ⊗ m_A and x ∈ L^1 ⊗ m_A.
TensorElement exp_action(const TensorElement &a, const TensorElement &x);

/// {e^{b⊗ε} * 0 : b ∈ L^0} read off the ε coefficient; equals B^1.
Subspace tangent_action_image(const DglaPtr &l);

/// H^1(L) with its projection (the tangent space of Def_L).
const DegreeCohomology &def_tangent(const Dgla &l);

/// Class in H^1 ⊗ M of e^{g'} * x' - y' for MC lifts x', y' over the total
/// ring of a small extension and a lift g' of g.
struct IsoObstruction {
  Matrix coords;   // dim H^1 x dim M
  Matrix cocycle;  // dim L^1 x dim M
  bool is_zero() const { return coords.is_zero(); }
};

/// Requires e^g * π(x') = π(y') over the quotient.  `g_lift` defaults to
/// the section lift of g.
IsoObstruction iso_obstruction(const TensorElement &g, const TensorElement &x_lift, const TensorElement &y_lift,
                               const SmallExtension &e, const std::optional<TensorElement> &g_lift = {});

/// A lift g'' of g with e^{g''} * x' = y', when the Iso obstruction vanishes.
std::optional<TensorElement> iso_lift(const TensorElement &g, const TensorElement &x_lift,
                                      const TensorElement &y_lift, const SmallExtension &e);

/// {[a,b] + db : b ∈ L^{-1} ⊗ m_A} ⊂ L^0 ⊗ m_A for an MC element a.
Subspace irrelevant_subalgebra(const TensorElement &a);

enum class MorphismVerdict { Etale, Isomorphism, Inconclusive };
std::string to_string(MorphismVerdict v);

struct MorphismReport {
  bool h0_surjective = false;
  bool h1_bijective = false;
  bool h2_injective = false;
  MorphismVerdict verdict = MorphismVerdict::Inconclusive;
  std::map<int, Matrix> maps; // H^i(f) for i = 0, 1, 2
  std::map<int, std::size_t> ranks;
};

/// Fills the report from exact ranks of H^0(f), H^1(f), H^2(f).  Throws
/// when f is not a DGLA morphism or a needed cohomology group lies outside
/// a window.
MorphismReport morphism_report(const DglaMorphism &f);

} // namespace dgla

// Maurer–Cartan equation over Artin rings: residuals, tangent space,
// obstruction classes of small extensions, lifting and smoothness
// diagnostics.
#pragma once

#include "dgla/artin.hpp"
#include "dgla/dgla.hpp"
#include "dgla/tensor.hpp"

#include <optional>

namespace dgla {

/// dx + ½[x,x] for x ∈ L^1 ⊗ m_A.
TensorElement mc_residual(const TensorElement &x);
bool mc_check(const TensorElement &x);

/// Z^1(L); an MC element over 𝕂[ε] is exactly ξ⊗ε with ξ ∈ Z^1.
Subspace mc_tangent(const Dgla &l);

/// Class of an obstruction in H^2(L) ⊗ M: coords(h, c) is the coefficient
/// of [h-th H^2 representative] ⊗ (c-th basis vector of M).
struct ObstructionClass {
  Matrix coords;
  /// The cocycle h = dx̃ + ½[x̃,x̃] in L^2 ⊗ M (dim L^2 x dim M).
  Matrix cocycle;
  bool is_zero() const { return coords.is_zero(); }
};

/// Lift of x ∈ L^1 ⊗ m_A to L^1 ⊗ m_B along the section of e.
TensorElement section_lift(const TensorElement &x, const SmallExtension &e);

/// The class of h = dx̃ + ½[x̃,x̃] ∈ L^2 ⊗ M.  Throws Error when x is not
/// MC, when x does not live over e.quotient, or when dh ≠ 0.
ObstructionClass obstruction_of_lift(const TensorElement &x, const SmallExtension &e);
/// Same computation starting from an arbitrary lift x̃ over e.total.
ObstructionClass obstruction_of_given_lift(const TensorElement &lift, const SmallExtension &e);

/// An MC lift over e.total when one exists (exact solve of dz = -h).
std::optional<TensorElement> lift_through_extension(const TensorElement &x, const SmallExtension &e);

/// Every MC lift is particular + (element of span(directions)); the
/// directions span Z^1 ⊗ M.
struct LiftFamily {
  TensorElement particular;
  std::vector<Vec> directions;
};
std::optional<LiftFamily> lift_family(const TensorElement &x, const SmallExtension &e);

/// Class of ½[ξ,ξ] in H^2 for ξ ∈ Z^1.  Throws when ξ is not a cocycle.
Vec primary_obstruction(const Dgla &l, const Vec &xi);

struct SmoothnessReport {
  bool bracket_L1_in_B2 = false;
  bool bracket_Z1_in_B2 = false;
  bool bracket_Z1_zero = false;
  bool H2_zero = false;
  /// One of the sufficient conditions for smoothness of MC_L holds:
  /// H^2 = 0, [L^1,L^1] ⊂ B^2 or [Z^1,Z^1] = 0.
  bool sufficient() const { return H2_zero || bracket_L1_in_B2 || bracket_Z1_zero; }
};
SmoothnessReport smoothness_diagnostics(const Dgla &l);

} // namespace dgla

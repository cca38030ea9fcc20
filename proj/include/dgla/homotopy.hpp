// Polynomial paths in L ⊗ m_A, the path algebra Ω = L ⊗ 𝕂[t,dt], and the
// passage between homotopies and gauge equivalences.
#pragma once

#include "dgla/equivalence.hpp"

namespace dgla {

/// Raised when a path computation would need a power of t above the cap.
class PathCapError : public Error {
public:
  using Error::Error;
};

/// Σ_k c_k t^k with c_k ∈ L^degree ⊗ m_A, k ≤ cap.
struct PolyPath {
  DglaPtr l;
  ArtinPtr a;
  int degree = 0;
  int cap = 0;
  std::vector<Vec> coeffs; // size cap + 1

  static PolyPath zero(const DglaPtr &l, const ArtinPtr &a, int degree, int cap);
  static PolyPath constant(const TensorElement &x, int cap);
  /// x · t^power.
  static PolyPath monomial(const TensorElement &x, int power, int cap);

  /// -1 for the zero path.
  int t_degree() const;
  TensorElement coefficient(int k) const;
  TensorElement at(const Scalar &s) const;
  PolyPath derivative() const;
  /// ∫_s^t.
  PolyPath integral_from(const Scalar &s) const;
  PolyPath with_cap(int cap) const;

  PolyPath operator+(const PolyPath &o) const;
  PolyPath operator-(const PolyPath &o) const;
  PolyPath operator-() const;
  friend PolyPath operator*(const Scalar &s, const PolyPath &p);
  /// Equal as polynomials; the caps may differ.
  bool operator==(const PolyPath &o) const;
};

PolyPath path_bracket(const PolyPath &x, const PolyPath &y);
PolyPath path_d(const PolyPath &x);

/// a(t) + b(t)dt ∈ Ω^i, a of degree i and b of degree i - 1.
struct OmegaElement {
  PolyPath a;
  PolyPath b;
  int degree() const { return a.degree; }
};

/// δ_Ω(a + b dt) = δa + ((-1)^|a| a' + δb) dt.
OmegaElement omega_differential(const OmegaElement &w);
/// [a + b dt, p + q dt] = [a,p] + ([a,q] + (-1)^|p| [b,p]) dt.
OmegaElement omega_bracket(const OmegaElement &x, const OmegaElement &y);

struct OmegaMcReport {
  bool pointwise_mc = false; // δa + ½[a,a] = 0 in L[t] ⊗ m_A
  bool flow = false;         // a' = δb + [a,b]
  bool ok() const { return pointwise_mc && flow; }
};
OmegaMcReport mc_omega_check(const OmegaElement &w);

/// v_s: t ↦ s, dt ↦ 0.
TensorElement evaluate(const OmegaElement &w, const Scalar &s);

/// Lifts ω_B ∈ MC_Ω(B) along the small extension A -> B to ω_A with
/// v_s(ω_A) = anchor, by a_A = ã + ∫_s^t (δb_A + [ã, b_A] - ã') dτ.
OmegaElement lift_omega(const OmegaElement &w, const SmallExtension &e, const TensorElement &anchor,
                        const Scalar &s = 0);

/// γ_p with e^{p(t+h)} e^{-p(t)} = e^{h(p' + γ_p) + O(h^2)}.
PolyPath bch_gamma(const PolyPath &p);

/// The unique p with p(0) = 0 and p' + γ_p = b, refined one m-adic level at
/// a time from `start` (default 0; any start with start(0) = 0 gives the
/// same p).  Throws unless re-substitution confirms the solution.
PolyPath solve_gauge_ode(const PolyPath &b, const std::optional<PolyPath> &start = {});

/// Cap large enough for the paths built here when the inputs have
/// t-degree ≤ input_degree: (max(n - 1, 1)) (input_degree + 1) + 1 for
/// nilpotency index n.
int default_path_cap(const ArtinAlgebra &a, int input_degree);

/// a(t) = e^{tg} * x, b(t) = -g; certified MC with v_0 = x, v_1 = y.
OmegaElement homotopy_from_gauge(const TensorElement &g, const TensorElement &x, const TensorElement &y);
/// g = p(1) where p' + γ_p = -b, p(0) = 0; certified e^g * v_0 = v_1.
TensorElement gauge_from_homotopy(const OmegaElement &w);

/// Single connecting path between x and y when they are gauge equivalent.
struct HomotopyDecision {
  EquivalenceDecision gauge;
  std::optional<OmegaElement> path;
};
HomotopyDecision homotopy_equivalent(const TensorElement &x, const TensorElement &y, const SearchBudget &budget = {});

/// {v_1(ω) - v_0(ω) : ω ∈ t_{MC_Ω}} ⊂ L^1, spanned by ω = δ(e) t + e dt.
Subspace tangent_difference_image(const DglaPtr &l);

} // namespace dgla

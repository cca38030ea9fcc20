// Tensor products L ⊗ A of a DGLA with a graded commutative algebra (zero
// differential on A), and the nilpotent DGLAs L ⊗ m_A.
#pragma once

#include "dgla/artin.hpp"
#include "dgla/dgla.hpp"

namespace dgla {

/// Finite-dimensional graded commutative associative algebra, not
/// necessarily unital.  table[(p*n + q)*n + r] = coefficient of b_r in b_p b_q.
struct GradedCommAlgebra {
  std::vector<std::string> labels;
  std::vector<int> degrees;
  std::vector<Scalar> table;

  std::size_t dim() const { return labels.size(); }
  const Scalar &coeff(std::size_t p, std::size_t q, std::size_t r) const {
    return table[(p * dim() + q) * dim() + r];
  }
};

/// Throws Error unless degrees are additive, the product is associative and
/// ab = (-1)^{|a||b|} ba.
void validate_graded_comm(const GradedCommAlgebra &a);

/// 𝕂 in degree 0.
GradedCommAlgebra ground_field();
/// m_A in degree 0 (non-unital).
GradedCommAlgebra max_ideal_algebra(const ArtinAlgebra &a);
/// A = 𝕂 ⊕ m_A in degree 0, unit first.
GradedCommAlgebra unital_algebra(const ArtinAlgebra &a);

/// (L⊗A)^n = ⊕_i L^i ⊗ A^{n-i}, d(x⊗a) = dx⊗a,
/// [x⊗a, y⊗b] = (-1)^{|a||y|} [x,y]⊗ab.  Basis of degree n ordered by
/// L-degree, then L-index, then A-index.
DglaPtr tensor_with_graded_algebra(const Dgla &l, const GradedCommAlgebra &a);

/// L ⊗ m_A with A in degree 0.  Degree n basis index k*dim(m_A) + p for
/// e_k ⊗ m_p.
DglaPtr tensor_nilpotent(const Dgla &l, const ArtinAlgebra &a);

/// Bracket and differential on L ⊗ m_A computed directly from the
/// structure constants of L and A, without materializing L ⊗ m_A.  Elements
/// of degree i use the layout of tensor_nilpotent.  Throw WindowError when a
/// needed bracket of L is undefined and its coefficient product is nonzero.
Vec tensor_bracket(const Dgla &l, const ArtinAlgebra &a, int i, const Vec &x, int j, const Vec &y);
Vec tensor_d(const Dgla &l, const ArtinAlgebra &a, int i, const Vec &x);

/// Matrix of id ⊗ f : L^deg ⊗ m_A -> L^deg ⊗ m_B.
Matrix base_change_block(std::size_t dim_l, const AlgebraMorphism &f);
/// Applies id ⊗ f to an element of L^deg ⊗ m_A.
Vec base_change(std::size_t dim_l, const AlgebraMorphism &f, const Vec &x);
/// id ⊗ (linear map on m): same as base_change for an arbitrary matrix.
Vec tensor_apply(std::size_t dim_l, const Matrix &m, const Vec &x);

/// x ∈ L^deg ⊗ m_A times the scalar-valued element c ∈ m_A: (Σ y_p ⊗ m_p) c.
Vec multiply_coefficients(std::size_t dim_l, const ArtinAlgebra &a, const Vec &x, const Vec &c);

/// Embeds v ∈ L^deg and c ∈ m_A as v ⊗ c.
Vec tensor_vec(const Vec &v, const Vec &c);

/// An element of L^degree ⊗ m_A, coefficient of e_k ⊗ m_p at k*dim(m_A) + p.
struct TensorElement {
  DglaPtr l;
  ArtinPtr a;
  int degree = 0;
  Vec coeffs;

  static TensorElement zero(const DglaPtr &l, const ArtinPtr &a, int degree);
  /// v ⊗ c for v ∈ L^degree, c ∈ m_A.
  static TensorElement pure(const DglaPtr &l, const ArtinPtr &a, int degree, const Vec &v, const Vec &c);

  std::size_t dim_l() const { return l->dim(degree); }
  std::size_t dim_m() const { return a->dim_m(); }
  const Scalar &at(std::size_t k, std::size_t p) const { return coeffs[k * a->dim_m() + p]; }
  bool is_zero() const { return dgla::is_zero(coeffs); }
  /// The L-vector multiplying m_p.
  Vec component(std::size_t p) const;

  TensorElement operator+(const TensorElement &o) const;
  TensorElement operator-(const TensorElement &o) const;
  TensorElement operator-() const;
  friend TensorElement operator*(const Scalar &s, const TensorElement &x);
  bool operator==(const TensorElement &o) const { return degree == o.degree && coeffs == o.coeffs; }
};

TensorElement bracket(const TensorElement &x, const TensorElement &y);
TensorElement differential(const TensorElement &x);
/// id ⊗ f for a local morphism whose source is x.a.
TensorElement base_change(const TensorElement &x, const AlgebraMorphism &f);

} // namespace dgla

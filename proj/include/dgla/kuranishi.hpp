// Hodge-type splittings L^i = B^i ⊕ H^i ⊕ C^i, the Kuranishi map
// F(x) = x + ½δ[x,x] and its inverse, the Kuranishi functor, gauge
// normalization into (C^1 ⊕ H^1) ⊗ m_A, and the truncated polynomial
// presentation q : H^1 -> H^2 of Kur.
#pragma once

#include "dgla/gauge.hpp"

#include <map>

namespace dgla {

/// Splitting data in every degree where H^i is computable.  delta(i) is
/// the block L^i -> L^{i-1}: project to B^i, invert d on C^{i-1}.
class HodgeSplit {
public:
  const DglaPtr &dgla() const { return l_; }
  bool has(int deg) const { return h_.count(deg) != 0; }
  const Subspace &b(int deg) const { return at(b_, deg); }
  const Subspace &h(int deg) const { return at(h_, deg); }
  const Subspace &c(int deg) const { return at(c_, deg); }
  /// dim L^{deg-1} x dim L^deg.
  const Matrix &delta(int deg) const { return at(delta_, deg); }
  /// Projector onto H^deg with kernel B^deg ⊕ C^deg.
  const Matrix &h_proj(int deg) const { return at(h_proj_, deg); }
  /// Coordinates of the H^deg component in the basis of h(deg).
  const Matrix &h_coords(int deg) const { return at(h_coords_, deg); }
  const Matrix &b_proj(int deg) const { return at(b_proj_, deg); }
  std::vector<int> degrees() const;

private:
  friend std::shared_ptr<const HodgeSplit> make_hodge_split(const DglaPtr &);
  template <class T> static const T &at(const std::map<int, T> &m, int deg) {
    auto it = m.find(deg);
    if (it == m.end())
      throw WindowError("Hodge splitting is not available in degree " + std::to_string(deg));
    return it->second;
  }
  DglaPtr l_;
  std::map<int, Subspace> b_, h_, c_;
  std::map<int, Matrix> delta_, h_proj_, h_coords_, b_proj_;
};

using HodgeSplitPtr = std::shared_ptr<const HodgeSplit>;

/// Deterministic split (memoized per DGLA); verifies dδ + δd = Id - H,
/// δδ = 0, dδd = d and H^2 = H wherever the blocks exist.
HodgeSplitPtr build_hodge_split(const DglaPtr &l);

/// Applies a matrix on L (block L^i -> L^j) to an element of L^i ⊗ m_A.
TensorElement apply_on_l(const Matrix &m, const TensorElement &x, int target_degree);

/// F(x) = x + ½δ[x,x].
TensorElement kuranishi_F(const TensorElement &x);
/// x with F(x) = y, by x_{n+1} = y - ½δ[x_n,x_n] from x_0 = y.
TensorElement kuranishi_F_inverse(const TensorElement &y);

/// True when x ∈ H^1 ⊗ m_A.
bool in_h1(const TensorElement &x);
/// H([F^{-1}x, F^{-1}x]) = 0 for x ∈ H^1 ⊗ m_A; throws otherwise.
bool kur_membership(const TensorElement &x);
/// F restricted to MC ∩ ker δ, certified to land in Kur.
TensorElement mc_to_kur(const TensorElement &x);
/// F^{-1} restricted to Kur, certified to land in MC ∩ ker δ.
TensorElement kur_to_mc(const TensorElement &y);

struct NormalForm {
  TensorElement gauge;      // g with e^g * x = normal
  TensorElement normal;     // B^1-component zero
  int iterations = 0;
};
/// Removes the B^1-component level by level with corrections c = δ(B-part).
NormalForm gauge_normalize(const TensorElement &x);

/// Taylor coefficients of q : H^1 -> H^2 up to total degree `order`.
struct TruncatedMap {
  std::size_t h1 = 0, h2 = 0;
  int order = 0;
  std::vector<std::map<Monomial, Scalar>> q; // one polynomial per H^2 coordinate
};

/// Raises Error when the truncated ring 𝕂[u_1..u_h1]/(deg > order) would
/// exceed `max_terms` monomials.
TruncatedMap kuranishi_polynomials(const DglaPtr &l, int order, std::size_t max_terms = 20000);

/// q(a_1, ..., a_h1) evaluated in m_A; requires order ≥ nilpotency_index - 1.
std::vector<Vec> evaluate_truncated_map(const TruncatedMap &q, const ArtinAlgebra &a, const std::vector<Vec> &args);

} // namespace dgla

#include "dgla/sampling.hpp"

namespace dgla {

Vec Lcg::vec(std::size_t n) {
  Vec v(n);
  for (auto &x : v)
    x = coeff();
  return v;
}

Vec Lcg::in(const Subspace &s) {
  if (s.dim() == 0)
    return zeros(s.ambient_dim());
  return s.basis() * vec(s.dim());
}

TensorElement sample_tensor(const DglaPtr &l, const ArtinPtr &a, int degree, Lcg &rng) {
  return {l, a, degree, rng.vec(l->dim(degree) * a->dim_m())};
}

namespace {

std::optional<TensorElement> walk(const DglaPtr &l, const std::vector<SmallExtension> &tower, Lcg &rng,
                                  bool random) {
  const Subspace z1 = mc_tangent(*l);
  std::optional<TensorElement> x;
  for (auto it = tower.rbegin(); it != tower.rend(); ++it) {
    const SmallExtension &e = *it;
    if (!x) {
      Vec xi = random ? rng.in(z1) : zeros(l->dim(1));
      x = TensorElement::pure(l, e.total, 1, xi, e.ideal.vector(0));
      continue;
    }
    auto fam = lift_family(*x, e);
    if (!fam)
      return std::nullopt;
    TensorElement next = fam->particular;
    if (random)
      for (const auto &dir : fam->directions)
        next = next + TensorElement{l, e.total, 1, Scalar(rng.coeff()) * dir};
    x = next;
  }
  return x;
}

} // namespace

TensorElement sample_mc(const DglaPtr &l, const ArtinPtr &a, Lcg &rng, int attempts) {
  if (a->dim_m() == 0)
    return TensorElement::zero(l, a, 1);
  const auto tower = small_extension_tower(a);
  for (int k = 0; k < attempts; ++k)
    if (auto x = walk(l, tower, rng, true))
      return TensorElement{l, a, 1, x->coeffs};
  return TensorElement{l, a, 1, walk(l, tower, rng, false)->coeffs};
}

} // namespace dgla

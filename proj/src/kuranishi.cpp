#include "dgla/kuranishi.hpp"

#include "dgla/bch.hpp"

#include <fmt/format.h>

#include <map>
#include <mutex>

namespace dgla {

std::shared_ptr<const HodgeSplit> make_hodge_split(const DglaPtr &l);

std::vector<int> HodgeSplit::degrees() const {
  std::vector<int> out;
  for (const auto &[deg, s] : h_)
    out.push_back(deg);
  return out;
}

namespace {

// Deterministic complement of Z^deg in L^deg; needs d out of deg.
Subspace c_part(const Dgla &l, int deg) {
  return complement(kernel(l.d_block(deg)), Subspace::full(l.dim(deg)));
}

void verify_split(const Dgla &l, const HodgeSplit &s) {
  for (int deg : s.degrees()) {
    const std::size_t n = l.dim(deg);
    const Matrix &h = s.h_proj(deg);
    if (!(h * h == h))
      throw Error(fmt::format("Hodge split: H is not idempotent in degree {}", deg));
    Matrix lhs(n, n);
    if (l.dim(deg - 1) > 0)
      lhs = lhs + l.d_block(deg - 1) * s.delta(deg);
    if (l.dim(deg + 1) > 0) {
      if (!s.has(deg + 1))
        continue; // the top of an open window
      lhs = lhs + s.delta(deg + 1) * l.d_block(deg);
      if (!(s.delta(deg) * s.delta(deg + 1)).is_zero())
        throw Error(fmt::format("Hodge split: δδ ≠ 0 in degree {}", deg + 1));
    }
    if (!(lhs == Matrix::identity(n) - h))
      throw Error(fmt::format("Hodge split: dδ + δd ≠ Id - H in degree {}", deg));
    if (l.dim(deg - 1) > 0) {
      const Matrix &d = l.d_block(deg - 1);
      if (!(d * s.delta(deg) * d == d))
        throw Error(fmt::format("Hodge split: dδd ≠ d out of degree {}", deg - 1));
    }
  }
}

} // namespace

std::shared_ptr<const HodgeSplit> make_hodge_split(const DglaPtr &lp) {
  const Dgla &l = *lp;
  const auto &coh = cohomology(l);
  auto s = std::make_shared<HodgeSplit>();
  s->l_ = lp;
  for (int deg = l.lo(); deg <= l.hi(); ++deg) {
    if (!coh.has(deg))
      continue;
    const std::size_t n = l.dim(deg);
    const auto &dc = coh.at(deg);
    Subspace c = complement(dc.z, Subspace::full(n));
    // [B | H | C] is a basis of L^deg
    std::vector<Vec> cols = dc.b.vectors();
    for (const auto &v : dc.h.vectors())
      cols.push_back(v);
    for (const auto &v : c.vectors())
      cols.push_back(v);
    Matrix inv = n == 0 ? Matrix(0, 0) : inverse(Matrix::from_columns(n, cols));
    const std::size_t nb = dc.b.dim(), nh = dc.h.dim();
    Matrix b_coords = inv.row_block(0, nb), h_coords = inv.row_block(nb, nb + nh);
    s->b_proj_.emplace(deg, nb == 0 ? Matrix(n, n) : dc.b.basis() * b_coords);
    s->h_proj_.emplace(deg, nh == 0 ? Matrix(n, n) : dc.h.basis() * h_coords);
    s->h_coords_.emplace(deg, h_coords);
    // δ: B^deg -> C^{deg-1}, inverse of d restricted to C^{deg-1}
    const std::size_t np = l.dim(deg - 1);
    Matrix delta(np, n);
    if (np > 0 && nb > 0) {
      Subspace cprev = c_part(l, deg - 1);
      Matrix dc_map = l.d_block(deg - 1) * cprev.basis();
      Matrix y(cprev.dim(), nb);
      for (std::size_t j = 0; j < nb; ++j) {
        auto sol = solve_affine(dc_map, dc.b.vector(j));
        if (!sol)
          throw Error("Hodge split: B is not the image of C");
        y.set_column(j, sol->particular);
      }
      delta = cprev.basis() * y * b_coords;
    }
    s->delta_.emplace(deg, delta);
    s->b_.emplace(deg, dc.b);
    s->h_.emplace(deg, dc.h);
    s->c_.emplace(deg, c);
  }
  verify_split(l, *s);
  return s;
}

HodgeSplitPtr build_hodge_split(const DglaPtr &l) {
  static std::mutex mu;
  static std::map<const Dgla *, HodgeSplitPtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(l.get()); it != cache.end())
      return it->second;
  }
  auto s = make_hodge_split(l);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(l.get(), s).first->second;
}

TensorElement apply_on_l(const Matrix &m, const TensorElement &x, int target_degree) {
  const std::size_t n = x.dim_m();
  if (m.cols() != x.dim_l())
    throw ShapeError("apply_on_l: matrix does not match the element");
  TensorElement out = TensorElement::zero(x.l, x.a, target_degree);
  if (out.dim_l() != m.rows())
    throw ShapeError("apply_on_l: matrix does not match the target degree");
  for (std::size_t j = 0; j < m.rows(); ++j)
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if (m(j, k) == 0)
        continue;
      for (std::size_t p = 0; p < n; ++p)
        out.coeffs[j * n + p] += m(j, k) * x.coeffs[k * n + p];
    }
  return out;
}

namespace {

void require_deg1(const TensorElement &x, const char *what) {
  if (x.degree != 1)
    throw Error(fmt::format("{}: expected an element of degree 1", what));
}

// ½δ[x,x], or zero when L^2 = 0
TensorElement half_delta_square(const HodgeSplit &s, const TensorElement &x) {
  if (x.l->dim(2) == 0)
    return TensorElement::zero(x.l, x.a, 1);
  return Scalar(1, 2) * apply_on_l(s.delta(2), bracket(x, x), 1);
}

TensorElement delta_one(const HodgeSplit &s, const TensorElement &x) {
  if (x.l->dim(0) == 0)
    return TensorElement::zero(x.l, x.a, 0);
  return apply_on_l(s.delta(1), x, 0);
}

} // namespace

TensorElement kuranishi_F(const TensorElement &x) {
  require_deg1(x, "kuranishi_F");
  auto s = build_hodge_split(x.l);
  return x + half_delta_square(*s, x);
}

TensorElement kuranishi_F_inverse(const TensorElement &y) {
  require_deg1(y, "kuranishi_F_inverse");
  auto s = build_hodge_split(y.l);
  TensorElement x = y;
  const int bound = y.a->nilpotency_index();
  for (int step = 0; step <= bound; ++step) {
    TensorElement next = y - half_delta_square(*s, x);
    if (next == x)
      break;
    x = next;
  }
  if (!(kuranishi_F(x) == y))
    throw Error("kuranishi_F_inverse: fixed-point iteration did not converge");
  return x;
}

bool in_h1(const TensorElement &x) {
  require_deg1(x, "in_h1");
  auto s = build_hodge_split(x.l);
  return apply_on_l(s->h_proj(1), x, 1) == x;
}

bool kur_membership(const TensorElement &x) {
  if (!in_h1(x))
    throw Error("kur_membership: element is not supported on H^1");
  if (x.l->dim(2) == 0)
    return true;
  auto s = build_hodge_split(x.l);
  TensorElement x0 = kuranishi_F_inverse(x);
  return apply_on_l(s->h_proj(2), bracket(x0, x0), 2).is_zero();
}

TensorElement mc_to_kur(const TensorElement &x) {
  require_deg1(x, "mc_to_kur");
  auto s = build_hodge_split(x.l);
  if (!mc_check(x))
    throw Error("mc_to_kur: element is not Maurer-Cartan");
  if (!delta_one(*s, x).is_zero())
    throw Error("mc_to_kur: element has a nonzero B^1 component (δx ≠ 0)");
  TensorElement y = kuranishi_F(x);
  if (!in_h1(y) || !kur_membership(y))
    throw Error("mc_to_kur: image is not in Kur (internal consistency failure)");
  return y;
}

TensorElement kur_to_mc(const TensorElement &y) {
  if (!kur_membership(y))
    throw Error("kur_to_mc: element is not in Kur");
  auto s = build_hodge_split(y.l);
  TensorElement x = kuranishi_F_inverse(y);
  if (!mc_check(x) || !delta_one(*s, x).is_zero())
    throw Error("kur_to_mc: F^{-1}(y) is not in MC ∩ ker δ (internal consistency failure)");
  return x;
}

NormalForm gauge_normalize(const TensorElement &x) {
  require_deg1(x, "gauge_normalize");
  if (!mc_check(x))
    throw Error("gauge_normalize: element is not Maurer-Cartan");
  auto s = build_hodge_split(x.l);
  NormalForm nf{TensorElement::zero(x.l, x.a, 0), x, 0};
  if (x.l->dim(0) == 0)
    return nf;
  const int bound = x.a->nilpotency_index();
  for (int level = 0; level <= bound; ++level) {
    TensorElement b = apply_on_l(s->b_proj(1), nf.normal, 1);
    if (b.is_zero())
      break;
    TensorElement c = apply_on_l(s->delta(1), b, 0);
    nf.normal = exp_action(c, nf.normal);
    nf.gauge = bch(c, nf.gauge);
    ++nf.iterations;
  }
  if (!apply_on_l(s->b_proj(1), nf.normal, 1).is_zero())
    throw Error("gauge_normalize: B^1 component did not vanish");
  if (!(exp_action(nf.gauge, x) == nf.normal))
    throw Error("gauge_normalize: accumulated gauge does not reproduce the normal form");
  return nf;
}

namespace {

void monomials_of_degree(std::size_t vars, int degree, Monomial &cur, std::size_t pos, std::vector<Monomial> &out) {
  if (pos + 1 == vars) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur[pos] = e;
    monomials_of_degree(vars, degree - e, cur, pos + 1, out);
  }
}

Scalar binomial(std::size_t n, std::size_t k) {
  Scalar r = 1;
  for (std::size_t i = 1; i <= k; ++i)
    r = r * Scalar(static_cast<long>(n - k + i)) / Scalar(static_cast<long>(i));
  return r;
}

} // namespace

TruncatedMap kuranishi_polynomials(const DglaPtr &l, int order, std::size_t max_terms) {
  if (order < 1)
    throw Error("kuranishi_polynomials: order must be at least 1");
  auto s = build_hodge_split(l);
  TruncatedMap out;
  out.order = order;
  out.h1 = s->h(1).dim();
  out.h2 = l->dim(2) == 0 ? 0 : s->h(2).dim();
  out.q.resize(out.h2);
  if (out.h1 == 0 || out.h2 == 0)
    return out;
  Scalar terms = binomial(out.h1 + static_cast<std::size_t>(order), out.h1) - 1;
  if (terms > Scalar(static_cast<long>(max_terms)))
    throw Error(fmt::format("kuranishi_polynomials: {} monomials exceed the budget of {}", terms.get_str(),
                            max_terms));
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < out.h1; ++i)
    vars.push_back(out.h1 == 1 ? "u" : fmt::format("u{}", i + 1));
  std::vector<Monomial> relations;
  Monomial cur(out.h1, 0);
  monomials_of_degree(out.h1, order + 1, cur, 0, relations);
  ArtinPtr ring = build_truncated_poly(vars, relations);
  const std::size_t n = ring->dim_m();
  // generic element Σ_i H_i ⊗ u_i
  TensorElement x = TensorElement::zero(l, ring, 1);
  for (std::size_t i = 0; i < out.h1; ++i) {
    const std::size_t p = ring->index_of(vars[i]);
    Vec hv = s->h(1).vector(i);
    for (std::size_t k = 0; k < hv.size(); ++k)
      x.coeffs[k * n + p] += hv[k];
  }
  TensorElement x0 = kuranishi_F_inverse(x);
  const TensorElement br = bracket(x0, x0);
  const Matrix &hc = s->h_coords(2);
  std::vector<Monomial> exps;
  for (const auto &label : ring->labels())
    exps.push_back(parse_monomial(label, vars));
  for (std::size_t j = 0; j < out.h2; ++j)
    for (std::size_t p = 0; p < n; ++p) {
      Scalar c = 0;
      for (std::size_t k = 0; k < hc.cols(); ++k)
        c += hc(j, k) * br.at(k, p);
      if (c != 0)
        out.q[j][exps[p]] = c;
    }
  return out;
}

std::vector<Vec> evaluate_truncated_map(const TruncatedMap &q, const ArtinAlgebra &a, const std::vector<Vec> &args) {
  if (args.size() != q.h1)
    throw ShapeError("evaluate_truncated_map: wrong number of arguments");
  if (q.order < a.nilpotency_index() - 1)
    throw Error("evaluate_truncated_map: truncation order is too low for this ring");
  const std::size_t n = a.dim_m();
  std::vector<Vec> out(q.h2, zeros(n));
  for (std::size_t j = 0; j < q.h2; ++j)
    for (const auto &[mono, coeff] : q.q[j]) {
      std::optional<Vec> prod;
      for (std::size_t i = 0; i < mono.size(); ++i)
        for (int e = 0; e < mono[i]; ++e)
          prod = prod ? a.mul(*prod, args[i]) : args[i];
      if (prod)
        axpy(out[j], coeff, *prod);
    }
  return out;
}

} // namespace dgla

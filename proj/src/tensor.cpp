#include "dgla/tensor.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <tuple>

namespace dgla {

void validate_graded_comm(const GradedCommAlgebra &a) {
  const std::size_t n = a.dim();
  if (a.degrees.size() != n || a.table.size() != n * n * n)
    throw ShapeError("graded algebra: degrees/table sizes do not match the basis");
  auto product = [&](const Vec &x, const Vec &y) {
    Vec out = zeros(n);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (x[p] != 0 && y[q] != 0)
          for (std::size_t r = 0; r < n; ++r)
            out[r] += x[p] * y[q] * a.coeff(p, q, r);
    return out;
  };
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r) {
        const Scalar &c = a.coeff(p, q, r);
        if (c != 0 && a.degrees[r] != a.degrees[p] + a.degrees[q])
          throw Error(fmt::format("graded algebra: {}*{} has a term of the wrong degree", a.labels[p], a.labels[q]));
        if (c != sign_of(static_cast<long long>(a.degrees[p]) * a.degrees[q]) * a.coeff(q, p, r))
          throw Error(fmt::format("graded algebra: not graded commutative on ({}, {})", a.labels[p], a.labels[q]));
      }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r) {
        Vec x = unit_vector(n, p), y = unit_vector(n, q), z = unit_vector(n, r);
        if (product(product(x, y), z) != product(x, product(y, z)))
          throw Error(fmt::format("graded algebra: not associative on ({}, {}, {})", a.labels[p], a.labels[q],
                                  a.labels[r]));
      }
}

GradedCommAlgebra ground_field() { return {{"1"}, {0}, {Scalar(1)}}; }

GradedCommAlgebra max_ideal_algebra(const ArtinAlgebra &a) {
  return {a.labels(), std::vector<int>(a.dim_m(), 0), a.table()};
}

GradedCommAlgebra unital_algebra(const ArtinAlgebra &a) {
  const std::size_t m = a.dim_m(), n = m + 1;
  GradedCommAlgebra out;
  out.labels.push_back("1");
  for (const auto &l : a.labels())
    out.labels.push_back(l);
  out.degrees.assign(n, 0);
  out.table.assign(n * n * n, Scalar(0));
  auto at = [&](std::size_t p, std::size_t q, std::size_t r) -> Scalar & { return out.table[(p * n + q) * n + r]; };
  at(0, 0, 0) = 1;
  for (std::size_t p = 1; p < n; ++p) {
    at(0, p, p) = 1;
    at(p, 0, p) = 1;
    for (std::size_t q = 1; q < n; ++q)
      for (std::size_t r = 1; r < n; ++r)
        at(p, q, r) = a.coeff(p - 1, q - 1, r - 1);
  }
  return out;
}

DglaPtr tensor_with_graded_algebra(const Dgla &l, const GradedCommAlgebra &a) {
  validate_graded_comm(a);
  int amin = 0, amax = 0;
  if (a.dim() > 0) {
    amin = *std::min_element(a.degrees.begin(), a.degrees.end());
    amax = *std::max_element(a.degrees.begin(), a.degrees.end());
  }
  const int lo = l.lo() + amin;
  const int hi = l.open_top() ? l.hi() + amin : l.hi() + amax;

  // (L-degree, L-index, A-index) -> index inside its total degree
  std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> index;
  struct Entry {
    int i;
    std::size_t k, p;
  };
  std::map<int, std::vector<Entry>> comps;
  std::vector<std::vector<std::string>> labels;
  for (int n = lo; n <= hi; ++n) {
    std::vector<std::string> lab;
    auto &comp = comps[n];
    for (int i = l.lo(); i <= l.hi(); ++i)
      for (std::size_t k = 0; k < l.dim(i); ++k)
        for (std::size_t p = 0; p < a.dim(); ++p) {
          if (a.degrees[p] != n - i)
            continue;
          index[{i, k, p}] = comp.size();
          comp.push_back({i, k, p});
          lab.push_back(l.labels(i)[k] + "⊗" + a.labels[p]);
        }
    labels.push_back(std::move(lab));
  }
  GradedSpace space(lo, std::move(labels));
  DglaBuilder b(space, l.open_top(), l.name() + "⊗A");

  for (int n = lo; n <= hi; ++n) {
    const auto &comp = comps[n];
    for (std::size_t s = 0; s < comp.size(); ++s) {
      const auto [i, k, p] = comp[s];
      if (!l.d_defined(i, k)) {
        b.mark_d_undefined(n, s);
        continue;
      }
      if (!space.in_window(n + 1))
        continue;
      Vec dx = l.d(i, unit_vector(l.dim(i), k));
      for (std::size_t m = 0; m < dx.size(); ++m)
        if (dx[m] != 0)
          b.set_d(n, s, index.at({i + 1, m, p}), dx[m]);
    }
  }

  for (int n1 = lo; n1 <= hi; ++n1)
    for (int n2 = lo; n2 <= hi; ++n2) {
      if (!space.in_window(n1 + n2))
        continue;
      const auto &c1 = comps[n1];
      const auto &c2 = comps[n2];
      const std::size_t dk = space.dim(n1 + n2);
      for (std::size_t s = 0; s < c1.size(); ++s)
        for (std::size_t t = 0; t < c2.size(); ++t) {
          const auto [i, k, p] = c1[s];
          const auto [j, m, q] = c2[t];
          bool ab_zero = true;
          for (std::size_t r = 0; r < a.dim(); ++r)
            if (a.coeff(p, q, r) != 0)
              ab_zero = false;
          if (ab_zero)
            continue;
          if (!l.bracket_defined(i, k, j, m)) {
            b.mark_bracket_undefined(n1, s, n2, t);
            continue;
          }
          Vec br = l.basis_bracket(i, k, j, m);
          if (is_zero(br))
            continue;
          const Scalar sgn = sign_of(static_cast<long long>(a.degrees[p]) * j);
          Vec out = zeros(dk);
          for (std::size_t u = 0; u < br.size(); ++u) {
            if (br[u] == 0)
              continue;
            for (std::size_t r = 0; r < a.dim(); ++r)
              if (a.coeff(p, q, r) != 0)
                out[index.at({i + j, u, r})] += sgn * br[u] * a.coeff(p, q, r);
          }
          b.set_bracket(n1, s, n2, t, out);
        }
    }
  return b.build(false);
}

DglaPtr tensor_nilpotent(const Dgla &l, const ArtinAlgebra &a) {
  return tensor_with_graded_algebra(l, max_ideal_algebra(a));
}

Vec tensor_bracket(const Dgla &l, const ArtinAlgebra &a, int i, const Vec &x, int j, const Vec &y) {
  const std::size_t n = a.dim_m();
  if (x.size() != l.dim(i) * n || y.size() != l.dim(j) * n)
    throw ShapeError(fmt::format("tensor_bracket: elements do not match degrees ({}, {})", i, j));
  Vec out = zeros(l.dim(i + j) * n);
  const BracketBlock *blk = l.block(i, j);
  if (blk == nullptr || n == 0)
    return out;
  const auto &prods = a.sparse_products();
  Scalar xy;
  for (std::size_t s = 0; s < x.size(); ++s) {
    if (x[s] == 0)
      continue;
    const std::size_t k = s / n, p = s % n;
    for (std::size_t t = 0; t < y.size(); ++t) {
      if (y[t] == 0)
        continue;
      const std::size_t m = t / n, q = t % n;
      const auto &pq = prods[p * n + q];
      if (pq.empty())
        continue;
      if (!blk->is_defined(k, m))
        throw WindowError(fmt::format("bracket [{}, {}] leaves the window", l.labels(i)[k], l.labels(j)[m]));
      const auto &terms = blk->sparse[k * blk->dj + m];
      if (terms.empty())
        continue;
      xy = x[s] * y[t];
      for (const auto &[u, c1] : terms)
        for (const auto &[r, c2] : pq)
          out[u * n + r] += xy * c1 * c2;
    }
  }
  return out;
}

Vec tensor_d(const Dgla &l, const ArtinAlgebra &a, int i, const Vec &x) {
  const std::size_t n = a.dim_m();
  if (x.size() != l.dim(i) * n)
    throw ShapeError(fmt::format("tensor_d: element does not match degree {}", i));
  Vec out = zeros(l.dim(i + 1) * n);
  if (!l.space().in_window(i) || n == 0)
    return out;
  for (std::size_t k = 0; k < l.dim(i); ++k) {
    bool nonzero = false;
    for (std::size_t p = 0; p < n && !nonzero; ++p)
      nonzero = x[k * n + p] != 0;
    if (!nonzero)
      continue;
    Vec dk = l.d(i, unit_vector(l.dim(i), k));
    for (std::size_t u = 0; u < dk.size(); ++u)
      if (dk[u] != 0)
        for (std::size_t p = 0; p < n; ++p)
          if (x[k * n + p] != 0)
            out[u * n + p] += dk[u] * x[k * n + p];
  }
  return out;
}

Matrix base_change_block(std::size_t dim_l, const AlgebraMorphism &f) {
  return kron(Matrix::identity(dim_l), f.matrix);
}

Vec base_change(std::size_t dim_l, const AlgebraMorphism &f, const Vec &x) {
  return tensor_apply(dim_l, f.matrix, x);
}

Vec tensor_apply(std::size_t dim_l, const Matrix &m, const Vec &x) {
  const std::size_t na = m.cols(), nb = m.rows();
  if (x.size() != dim_l * na)
    throw ShapeError("tensor_apply: vector size does not match");
  Vec out = zeros(dim_l * nb);
  for (std::size_t k = 0; k < dim_l; ++k)
    for (std::size_t p = 0; p < na; ++p) {
      const Scalar &v = x[k * na + p];
      if (v == 0)
        continue;
      for (std::size_t q = 0; q < nb; ++q)
        if (m(q, p) != 0)
          out[k * nb + q] += v * m(q, p);
    }
  return out;
}

Vec multiply_coefficients(std::size_t dim_l, const ArtinAlgebra &a, const Vec &x, const Vec &c) {
  return tensor_apply(dim_l, a.mul_matrix(c), x);
}

Vec tensor_vec(const Vec &v, const Vec &c) {
  Vec out(v.size() * c.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    for (std::size_t p = 0; p < c.size(); ++p)
      out[k * c.size() + p] = v[k] * c[p];
  return out;
}

// ---------------------------------------------------------------------------
// TensorElement

TensorElement TensorElement::zero(const DglaPtr &l, const ArtinPtr &a, int degree) {
  return {l, a, degree, zeros(l->dim(degree) * a->dim_m())};
}

TensorElement TensorElement::pure(const DglaPtr &l, const ArtinPtr &a, int degree, const Vec &v, const Vec &c) {
  if (v.size() != l->dim(degree) || c.size() != a->dim_m())
    throw ShapeError("TensorElement::pure: factor sizes do not match");
  return {l, a, degree, tensor_vec(v, c)};
}

Vec TensorElement::component(std::size_t p) const {
  Vec v(dim_l());
  for (std::size_t k = 0; k < v.size(); ++k)
    v[k] = at(k, p);
  return v;
}

namespace {

void check_compatible(const TensorElement &x, const TensorElement &y) {
  if (x.l != y.l)
    throw Error("tensor elements over different DGLAs");
  if (x.a != y.a && (x.a->dim_m() != y.a->dim_m() || x.a->table() != y.a->table()))
    throw Error("tensor elements over different rings");
}

} // namespace

TensorElement TensorElement::operator+(const TensorElement &o) const {
  check_compatible(*this, o);
  if (degree != o.degree)
    throw ShapeError("adding tensor elements of different degrees");
  return {l, a, degree, coeffs + o.coeffs};
}

TensorElement TensorElement::operator-(const TensorElement &o) const {
  check_compatible(*this, o);
  if (degree != o.degree)
    throw ShapeError("subtracting tensor elements of different degrees");
  return {l, a, degree, coeffs - o.coeffs};
}

TensorElement TensorElement::operator-() const { return {l, a, degree, -coeffs}; }

TensorElement operator*(const Scalar &s, const TensorElement &x) { return {x.l, x.a, x.degree, s * x.coeffs}; }

TensorElement bracket(const TensorElement &x, const TensorElement &y) {
  check_compatible(x, y);
  return {x.l, x.a, x.degree + y.degree, tensor_bracket(*x.l, *x.a, x.degree, x.coeffs, y.degree, y.coeffs)};
}

TensorElement differential(const TensorElement &x) {
  return {x.l, x.a, x.degree + 1, tensor_d(*x.l, *x.a, x.degree, x.coeffs)};
}

TensorElement base_change(const TensorElement &x, const AlgebraMorphism &f) {
  if (f.source->dim_m() != x.a->dim_m())
    throw ShapeError("base_change: morphism source does not match the coefficient ring");
  return {x.l, f.target, x.degree, base_change(x.dim_l(), f, x.coeffs)};
}

} // namespace dgla

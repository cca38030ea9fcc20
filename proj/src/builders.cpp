#include "dgla/builders.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>

namespace dgla {

// ---------------------------------------------------------------------------
// Associative algebras

void validate_assoc(const AssocAlgebra &a) {
  const std::size_t n = a.dim();
  if (a.table.size() != n * n * n)
    throw ShapeError("associative algebra: table size does not match the basis");
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
        Vec x = unit_vector(n, p), y = unit_vector(n, q), z = unit_vector(n, r);
        if (product(product(x, y), z) != product(x, product(y, z)))
          throw Error(fmt::format("algebra table is not associative on ({}, {}, {})", a.labels[p], a.labels[q],
                                  a.labels[r]));
      }
  // a unit u satisfies u e_q = e_q = e_q u for every q: a linear system in u
  Matrix sys(2 * n * n, n);
  Vec rhs(2 * n * n);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t p = 0; p < n; ++p) {
        sys(q * n + r, p) = a.coeff(p, q, r);
        sys(n * n + q * n + r, p) = a.coeff(q, p, r);
      }
      rhs[q * n + r] = rhs[n * n + q * n + r] = (q == r) ? 1 : 0;
    }
  if (n == 0 || !solve_affine(sys, rhs))
    throw Error("algebra table has no unit");
}

AssocAlgebra unitalization(const ArtinAlgebra &a) {
  const std::size_t m = a.dim_m(), n = m + 1;
  AssocAlgebra out;
  out.labels.push_back("1");
  for (const auto &l : a.labels())
    out.labels.push_back(l);
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

// ---------------------------------------------------------------------------
// End(V) complex

Matrix standard_J(std::size_t dim) {
  if (dim % 2 != 0)
    throw Error("build_example_J needs an even dimension");
  Matrix j(dim, dim);
  for (std::size_t b = 0; b < dim; b += 2) {
    j(b, b + 1) = 1;
    j(b + 1, b) = -1;
  }
  return j;
}

namespace {

Matrix unflatten(const Vec &v, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      m(r, c) = v[r * n + c];
  return m;
}

Vec flatten(const Matrix &m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      v.push_back(m(r, c));
  return v;
}

} // namespace

DglaPtr build_example_J(std::size_t dim, std::string name) {
  const Matrix j = standard_J(dim);
  const std::size_t n2 = dim * dim;
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      labels.push_back(dim < 10 ? fmt::format("E{}{}", r + 1, c + 1) : fmt::format("E{},{}", r + 1, c + 1));
  const int lo = 1, hi = 4;
  GradedSpace space(lo, std::vector<std::vector<std::string>>(hi - lo + 1, labels));
  DglaBuilder b(space, true, name.empty() ? fmt::format("J({})", dim) : name);
  for (int deg = lo; deg < hi; ++deg) {
    Matrix block(n2, n2);
    for (std::size_t k = 0; k < n2; ++k) {
      Matrix a = unflatten(unit_vector(n2, k), dim);
      Matrix da = (deg % 2 != 0) ? j * a + a * j : j * a - a * j;
      block.set_column(k, flatten(da));
    }
    b.set_d_block(deg, block);
  }
  for (int p = lo; p <= hi; ++p)
    for (int q = lo; p + q <= hi; ++q)
      for (std::size_t k = 0; k < n2; ++k)
        for (std::size_t l = 0; l < n2; ++l) {
          Matrix a = unflatten(unit_vector(n2, k), dim), c = unflatten(unit_vector(n2, l), dim);
          Matrix br = a * c - Scalar(sign_of(static_cast<long long>(p) * q)) * (c * a);
          b.set_bracket(p, k, q, l, flatten(br));
        }
  return b.build(false);
}

// ---------------------------------------------------------------------------
// Hochschild cochains

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i)
    r *= b;
  return r;
}

std::vector<std::size_t> word_of(std::size_t rank, std::size_t len, std::size_t n) {
  std::vector<std::size_t> w(len);
  for (std::size_t t = len; t-- > 0;) {
    w[t] = rank % n;
    rank /= n;
  }
  return w;
}

std::size_t rank_of(const std::vector<std::size_t> &w, std::size_t n) {
  std::size_t r = 0;
  for (auto x : w)
    r = r * n + x;
  return r;
}

// Gerstenhaber circle product φ ∘ ψ with φ ∈ G^p, ψ ∈ G^q:
// Σ_i (-1)^{iq} φ(a_0, …, ψ(a_i, …, a_{i+q}), …)
Vec circle(std::size_t n, int p, const Vec &phi, int q, const Vec &psi) {
  Vec out = zeros(ipow(n, p + q + 1) * n);
  for (std::size_t s = 0; s < phi.size(); ++s) {
    if (phi[s] == 0)
      continue;
    const auto w = word_of(s / n, static_cast<std::size_t>(p + 1), n);
    const std::size_t o = s % n;
    for (std::size_t t = 0; t < psi.size(); ++t) {
      if (psi[t] == 0)
        continue;
      const auto w2 = word_of(t / n, static_cast<std::size_t>(q + 1), n);
      const std::size_t o2 = t % n;
      const Scalar c = phi[s] * psi[t];
      for (int i = 0; i <= p; ++i) {
        if (w[static_cast<std::size_t>(i)] != o2)
          continue;
        std::vector<std::size_t> u(w.begin(), w.begin() + i);
        u.insert(u.end(), w2.begin(), w2.end());
        u.insert(u.end(), w.begin() + i + 1, w.end());
        out[rank_of(u, n) * n + o] += sign_of(static_cast<long long>(i) * q) * c;
      }
    }
  }
  return out;
}

Vec gerstenhaber(std::size_t n, int p, const Vec &phi, int q, const Vec &psi) {
  return circle(n, p, phi, q, psi) - Scalar(sign_of(static_cast<long long>(p) * q)) * circle(n, q, psi, p, phi);
}

} // namespace

Vec hochschild_multiplication(const AssocAlgebra &a) {
  const std::size_t n = a.dim();
  Vec mu = zeros(n * n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        mu[(x * n + y) * n + z] = a.coeff(x, y, z);
  return mu;
}

Vec hochschild_cochain0(const Matrix &phi) {
  const std::size_t n = phi.cols();
  Vec v = zeros(n * n);
  for (std::size_t in = 0; in < n; ++in)
    for (std::size_t out = 0; out < n; ++out)
      v[in * n + out] = phi(out, in);
  return v;
}

DglaPtr build_hochschild_window(const AssocAlgebra &a, int max_degree, std::string name) {
  validate_assoc(a);
  if (max_degree < 1)
    throw Error("Hochschild window needs max degree at least 1");
  const std::size_t n = a.dim();
  std::vector<std::vector<std::string>> labels;
  for (int p = 0; p <= max_degree; ++p) {
    std::vector<std::string> lab;
    const std::size_t words = ipow(n, p + 1);
    for (std::size_t r = 0; r < words; ++r) {
      const auto w = word_of(r, static_cast<std::size_t>(p + 1), n);
      std::string in;
      for (std::size_t t = 0; t < w.size(); ++t)
        in += (t ? "," : "") + a.labels[w[t]];
      for (std::size_t o = 0; o < n; ++o)
        lab.push_back(in + "->" + a.labels[o]);
    }
    labels.push_back(std::move(lab));
  }
  GradedSpace space(0, std::move(labels));
  DglaBuilder b(space, true, name.empty() ? "Hochschild" : name);
  const Vec mu = hochschild_multiplication(a);
  for (int p = 0; p <= max_degree; ++p)
    for (int q = 0; p + q <= max_degree; ++q)
      for (std::size_t k = 0; k < space.dim(p); ++k)
        for (std::size_t l = 0; l < space.dim(q); ++l)
          b.set_bracket(p, k, q, l, gerstenhaber(n, p, unit_vector(space.dim(p), k), q, unit_vector(space.dim(q), l)));
  for (int p = 0; p < max_degree; ++p) {
    Matrix block(space.dim(p + 1), space.dim(p));
    for (std::size_t k = 0; k < space.dim(p); ++k)
      block.set_column(k, gerstenhaber(n, 1, mu, p, unit_vector(space.dim(p), k)));
    b.set_d_block(p, block);
  }
  return b.build(false);
}

// ---------------------------------------------------------------------------
// Polyvector fields

namespace {

using Poly = std::map<Monomial, Scalar>;
// coefficient monomial and bitmask of ∂-indices
using PolyVector = std::map<std::pair<Monomial, unsigned>, Scalar>;
using VectorField = std::vector<Poly>;

void add_term(Poly &p, const Monomial &m, const Scalar &c) {
  if (c == 0)
    return;
  Scalar &slot = p[m];
  slot += c;
  if (slot == 0)
    p.erase(m);
}

Poly partial(const Poly &f, std::size_t i) {
  Poly out;
  for (const auto &[m, c] : f) {
    if (m[i] == 0)
      continue;
    Monomial d = m;
    d[i] -= 1;
    add_term(out, d, c * m[i]);
  }
  return out;
}

Poly mul(const Poly &f, const Poly &g) {
  Poly out;
  for (const auto &[a, ca] : f)
    for (const auto &[b, cb] : g) {
      Monomial m = a;
      for (std::size_t i = 0; i < m.size(); ++i)
        m[i] += b[i];
      add_term(out, m, ca * cb);
    }
  return out;
}

Poly apply_field(const VectorField &xi, const Poly &h) {
  Poly out;
  for (std::size_t i = 0; i < xi.size(); ++i)
    for (const auto &[m, c] : mul(xi[i], partial(h, i)))
      add_term(out, m, c);
  return out;
}

VectorField field_bracket(const VectorField &xi, const VectorField &zeta) {
  VectorField out(xi.size());
  for (std::size_t k = 0; k < xi.size(); ++k) {
    out[k] = apply_field(xi, zeta[k]);
    for (const auto &[m, c] : apply_field(zeta, xi[k]))
      add_term(out[k], m, -c);
  }
  return out;
}

PolyVector wedge(const std::vector<VectorField> &fields, std::size_t nv) {
  PolyVector cur;
  cur[{Monomial(nv, 0), 0u}] = 1;
  for (const auto &xi : fields) {
    PolyVector next;
    for (const auto &[key, c] : cur) {
      const auto &[mono, mask] = key;
      for (std::size_t i = 0; i < nv; ++i) {
        if (xi[i].empty() || (mask & (1u << i)))
          continue;
        // move ∂_i from the end past the larger indices already present
        int above = __builtin_popcount(mask >> (i + 1));
        const int s = (above % 2 == 0) ? 1 : -1;
        for (const auto &[m, cm] : xi[i]) {
          Monomial prod = mono;
          for (std::size_t v = 0; v < nv; ++v)
            prod[v] += m[v];
          auto k2 = std::make_pair(prod, mask | (1u << i));
          Scalar &slot = next[k2];
          slot += s * c * cm;
          if (slot == 0)
            next.erase(k2);
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

PolyVector scale(const Poly &f, const PolyVector &p) {
  PolyVector out;
  for (const auto &[key, c] : p)
    for (const auto &[m, cm] : f) {
      Monomial prod = key.first;
      for (std::size_t v = 0; v < prod.size(); ++v)
        prod[v] += m[v];
      auto k2 = std::make_pair(prod, key.second);
      Scalar &slot = out[k2];
      slot += c * cm;
      if (slot == 0)
        out.erase(k2);
    }
  return out;
}

void accumulate(PolyVector &acc, const PolyVector &p, const Scalar &s) {
  for (const auto &[key, c] : p) {
    Scalar &slot = acc[key];
    slot += s * c;
    if (slot == 0)
      acc.erase(key);
  }
}

struct PolyBasis {
  // basis element: coefficient monomial and ∂-mask (mask 0 in degree -1)
  std::vector<std::pair<Monomial, unsigned>> elems;
  std::map<std::pair<Monomial, unsigned>, std::size_t> index;
};

} // namespace

DglaPtr build_polyvector(int num_vars, int truncation_order, std::string name) {
  if (num_vars < 1 || num_vars > 8 || truncation_order < 0)
    throw Error("build_polyvector: need 1 ≤ n ≤ 8 variables and D ≥ 0");
  const std::size_t nv = static_cast<std::size_t>(num_vars);
  std::vector<std::string> vars;
  const char *names[] = {"x", "y", "z"};
  for (std::size_t v = 0; v < nv; ++v)
    vars.push_back(nv <= 3 ? names[v] : fmt::format("x{}", v + 1));

  // monomials of degree ≤ D, by degree then lexicographically
  std::vector<Monomial> monos;
  Monomial cur(nv, 0);
  while (true) {
    int d = 0;
    for (int e : cur)
      d += e;
    if (d <= truncation_order)
      monos.push_back(cur);
    std::size_t v = 0;
    while (v < nv) {
      if (++cur[v] <= truncation_order)
        break;
      cur[v] = 0;
      ++v;
    }
    if (v == nv)
      break;
  }
  std::sort(monos.begin(), monos.end(), [](const Monomial &a, const Monomial &b) {
    int da = 0, db = 0;
    for (int e : a)
      da += e;
    for (int e : b)
      db += e;
    if (da != db)
      return da < db;
    return a > b;
  });

  const int lo = -1, hi = num_vars - 1;
  std::vector<PolyBasis> bases(static_cast<std::size_t>(hi - lo + 1));
  std::vector<std::vector<std::string>> labels(bases.size());
  for (int deg = lo; deg <= hi; ++deg) {
    auto &pb = bases[static_cast<std::size_t>(deg - lo)];
    auto &lab = labels[static_cast<std::size_t>(deg - lo)];
    std::vector<unsigned> masks;
    if (deg == -1)
      masks.push_back(0);
    else
      for (unsigned m = 0; m < (1u << nv); ++m)
        if (__builtin_popcount(m) == deg + 1)
          masks.push_back(m);
    // subsets in lexicographic order of their sorted index lists
    std::sort(masks.begin(), masks.end(), [nv](unsigned a, unsigned b) {
      for (std::size_t i = 0; i < nv; ++i) {
        bool ia = a & (1u << i), ib = b & (1u << i);
        if (ia != ib)
          return ia;
      }
      return false;
    });
    for (unsigned mask : masks)
      for (const auto &m : monos) {
        pb.index[{m, mask}] = pb.elems.size();
        pb.elems.emplace_back(m, mask);
        std::string coef = monomial_label(m, vars);
        std::string parts;
        for (std::size_t i = 0; i < nv; ++i)
          if (mask & (1u << i))
            parts += (parts.empty() ? "d" : "^d") + vars[i];
        if (deg == -1)
          lab.push_back(coef);
        else
          lab.push_back(coef == "1" ? parts : coef + "*" + parts);
      }
  }
  GradedSpace space(lo, labels);
  DglaBuilder b(space, false, name.empty() ? fmt::format("Poly(n={},D={})", num_vars, truncation_order) : name);

  auto base_of = [&](int deg) -> const PolyBasis & { return bases[static_cast<std::size_t>(deg - lo)]; };
  auto fields_of = [&](const Monomial &m, unsigned mask) {
    std::vector<VectorField> out;
    bool first = true;
    for (std::size_t i = 0; i < nv; ++i) {
      if (!(mask & (1u << i)))
        continue;
      VectorField xi(nv);
      xi[i][first ? m : Monomial(nv, 0)] = 1;
      first = false;
      out.push_back(std::move(xi));
    }
    return out;
  };
  auto without = [](const std::vector<VectorField> &v, std::size_t i) {
    std::vector<VectorField> out;
    for (std::size_t t = 0; t < v.size(); ++t)
      if (t != i)
        out.push_back(v[t]);
    return out;
  };
  // [ξ_0∧…∧ξ_a, h] = Σ (-1)^{a-i} ξ_i(h) ξ_0∧…ξ̂_i…∧ξ_a
  auto bracket_with_function = [&](const std::vector<VectorField> &xs, const Poly &h) {
    PolyVector acc;
    const int a = static_cast<int>(xs.size()) - 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Poly xh = apply_field(xs[i], h);
      if (xh.empty())
        continue;
      accumulate(acc, scale(xh, wedge(without(xs, i), nv)), sign_of(a - static_cast<int>(i)));
    }
    return acc;
  };

  for (int p = lo; p <= hi; ++p)
    for (int q = lo; q <= hi; ++q) {
      const int t = p + q;
      if (!space.in_window(t))
        continue;
      const auto &bp = base_of(p), &bq = base_of(q), &bt = base_of(t);
      for (std::size_t k = 0; k < bp.elems.size(); ++k)
        for (std::size_t l = 0; l < bq.elems.size(); ++l) {
          const auto &[mk, sk] = bp.elems[k];
          const auto &[ml, sl] = bq.elems[l];
          PolyVector res;
          if (p >= 0 && q == -1) {
            res = bracket_with_function(fields_of(mk, sk), Poly{{ml, Scalar(1)}});
          } else if (p == -1 && q >= 0) {
            res = bracket_with_function(fields_of(ml, sl), Poly{{mk, Scalar(1)}});
            for (auto &[key, c] : res)
              c *= -sign_of(q); // [h, P] = -(-1)^{-q} [P, h]
          } else {
            auto xs = fields_of(mk, sk), zs = fields_of(ml, sl);
            for (std::size_t i = 0; i < xs.size(); ++i)
              for (std::size_t j = 0; j < zs.size(); ++j) {
                std::vector<VectorField> fs{field_bracket(xs[i], zs[j])};
                for (auto &f : without(xs, i))
                  fs.push_back(f);
                for (auto &f : without(zs, j))
                  fs.push_back(f);
                accumulate(res, wedge(fs, nv), sign_of(static_cast<int>(i + j)));
              }
          }
          Vec out = zeros(bt.elems.size());
          bool outside = false;
          for (const auto &[key, c] : res) {
            auto it = bt.index.find(key);
            if (it == bt.index.end()) {
              outside = true;
              break;
            }
            out[it->second] = c;
          }
          if (outside)
            b.mark_bracket_undefined(p, k, q, l);
          else
            b.set_bracket(p, k, q, l, out);
        }
    }
  return b.build(false);
}

// ---------------------------------------------------------------------------
// L_d

DglaPtr extend_with_d(const Dgla &l) {
  if (!l.space().in_window(1))
    throw Error("extend_with_d: degree 1 must lie in the window");
  std::vector<std::vector<std::string>> labels;
  for (int deg = l.lo(); deg <= l.hi(); ++deg)
    labels.push_back(l.labels(deg));
  auto &l1 = labels[static_cast<std::size_t>(1 - l.lo())];
  std::string dname = "d";
  while (std::find(l1.begin(), l1.end(), dname) != l1.end())
    dname += "'";
  l1.push_back(dname);
  GradedSpace space(l.lo(), std::move(labels));
  DglaBuilder b(space, l.open_top(), l.name() + "_d");

  auto pad = [&](int deg, Vec v) {
    if (deg == 1)
      v.push_back(0);
    return v;
  };
  for (int deg = l.lo(); deg <= l.hi(); ++deg) {
    for (std::size_t k = 0; k < l.dim(deg); ++k) {
      if (!l.d_defined(deg, k)) {
        b.mark_d_undefined(deg, k);
        continue;
      }
      if (!space.in_window(deg + 1))
        continue;
      Vec dv = pad(deg + 1, l.d(deg, unit_vector(l.dim(deg), k)));
      for (std::size_t m = 0; m < dv.size(); ++m)
        if (dv[m] != 0)
          b.set_d(deg, k, m, dv[m]);
    }
  }
  const std::size_t di = l.dim(1);
  for (int p = l.lo(); p <= l.hi(); ++p)
    for (int q = l.lo(); q <= l.hi(); ++q) {
      if (!space.in_window(p + q))
        continue;
      for (std::size_t k = 0; k < l.dim(p); ++k)
        for (std::size_t m = 0; m < l.dim(q); ++m) {
          if (!l.bracket_defined(p, k, q, m))
            b.mark_bracket_undefined(p, k, q, m);
          else
            b.set_bracket(p, k, q, m, pad(p + q, l.basis_bracket(p, k, q, m)));
        }
    }
  // [d, b] = db and [b, d] = -(-1)^{|b|} db
  for (int q = l.lo(); q <= l.hi(); ++q) {
    if (!space.in_window(q + 1))
      continue;
    for (std::size_t m = 0; m < l.dim(q); ++m) {
      if (!l.d_defined(q, m)) {
        b.mark_bracket_undefined(1, di, q, m);
        b.mark_bracket_undefined(q, m, 1, di);
        continue;
      }
      Vec db = pad(q + 1, l.d(q, unit_vector(l.dim(q), m)));
      b.set_bracket(1, di, q, m, db);
      b.set_bracket(q, m, 1, di, Scalar(-sign_of(q)) * db);
    }
  }
  if (space.in_window(2))
    b.set_bracket(1, di, 1, di, zeros(space.dim(2)));
  return b.build(false);
}

std::size_t extension_index(const Dgla &ld) { return ld.dim(1) - 1; }

Vec embed_with_d(const Dgla &l, const Vec &a) {
  if (a.size() != l.dim(1))
    throw ShapeError("embed_with_d: element must lie in L^1");
  Vec v = a;
  v.push_back(1);
  return v;
}

// ---------------------------------------------------------------------------
// Positive truncation

DglaMorphism truncate_positive(const DglaPtr &lp, const Subspace &n1) {
  const Dgla &l = *lp;
  const std::size_t d1 = l.dim(1);
  if (n1.ambient_dim() != d1)
    throw ShapeError("truncate_positive: complement lives in the wrong space");
  Subspace b1 = Subspace::zero(d1);
  if (l.dim(0) > 0)
    b1 = image(l.d_block(0));
  if (n1.dim() + b1.dim() != d1 || sum(n1, b1).dim() != d1)
    throw Error("truncate_positive: complement is not transverse to B^1");

  const int lo = 1, hi = std::max(1, l.hi());
  std::vector<std::vector<std::string>> labels;
  std::vector<Matrix> incl; // inclusion block per degree
  for (int deg = lo; deg <= hi; ++deg) {
    if (deg == 1) {
      std::vector<std::string> lab;
      for (std::size_t c = 0; c < n1.dim(); ++c) {
        Vec v = n1.vector(c);
        std::size_t nz = 0, at = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
          if (v[i] != 0) {
            ++nz;
            at = i;
          }
        lab.push_back(nz == 1 && v[at] == 1 ? l.labels(1)[at] : fmt::format("n{}", c));
      }
      labels.push_back(std::move(lab));
      incl.push_back(n1.basis());
    } else {
      labels.push_back(l.labels(deg));
      incl.push_back(Matrix::identity(l.dim(deg)));
    }
  }
  GradedSpace space(lo, std::move(labels));
  DglaBuilder b(space, l.open_top(), l.name() + "_+");
  auto emb = [&](int deg, const Vec &v) { return incl[static_cast<std::size_t>(deg - lo)] * v; };

  for (int deg = lo; deg <= hi; ++deg)
    for (std::size_t k = 0; k < space.dim(deg); ++k) {
      Vec out;
      if (!l.try_d(deg, emb(deg, unit_vector(space.dim(deg), k)), out)) {
        b.mark_d_undefined(deg, k);
        continue;
      }
      if (space.in_window(deg + 1))
        for (std::size_t m = 0; m < out.size(); ++m)
          if (out[m] != 0)
            b.set_d(deg, k, m, out[m]);
    }
  for (int p = lo; p <= hi; ++p)
    for (int q = lo; p + q <= hi; ++q)
      for (std::size_t k = 0; k < space.dim(p); ++k)
        for (std::size_t m = 0; m < space.dim(q); ++m) {
          Vec out;
          if (!l.try_bracket(p, emb(p, unit_vector(space.dim(p), k)), q, emb(q, unit_vector(space.dim(q), m)), out))
            b.mark_bracket_undefined(p, k, q, m);
          else
            b.set_bracket(p, k, q, m, out);
        }
  DglaMorphism f{b.build(false), lp, {}};
  for (int deg = lo; deg <= hi; ++deg)
    f.blocks.emplace(deg, incl[static_cast<std::size_t>(deg - lo)]);
  return f;
}

DglaMorphism truncate_positive(const DglaPtr &l) {
  const std::size_t d1 = l->dim(1);
  Subspace b1 = l->dim(0) > 0 ? image(l->d_block(0)) : Subspace::zero(d1);
  return truncate_positive(l, complement(b1, Subspace::full(d1)));
}

// ---------------------------------------------------------------------------
// Cohomology DGLA

CohomologyDgla cohomology_dgla(const Dgla &l) {
  CohomologyData h = cohomology(l);
  if (h.degrees.empty())
    throw Error("cohomology_dgla: cohomology is not computable in any degree");
  const int lo = h.degrees.begin()->first, hi = h.degrees.rbegin()->first;
  std::vector<std::vector<std::string>> labels;
  for (int deg = lo; deg <= hi; ++deg) {
    std::vector<std::string> lab;
    if (h.has(deg))
      for (std::size_t c = 0; c < h.dim_h(deg); ++c) {
        Vec v = h.at(deg).h.vector(c);
        std::size_t nz = 0, at = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
          if (v[i] != 0) {
            ++nz;
            at = i;
          }
        lab.push_back(nz == 1 ? "[" + l.labels(deg)[at] + "]" : fmt::format("[h{}_{}]", deg, c));
      }
    labels.push_back(std::move(lab));
  }
  GradedSpace space(lo, std::move(labels));
  const bool open = l.open_top() || hi < l.hi();
  DglaBuilder b(space, open, "H(" + l.name() + ")");
  for (int p = lo; p <= hi; ++p)
    for (int q = lo; p + q <= hi; ++q) {
      if (!h.has(p) || !h.has(q))
        continue;
      for (std::size_t k = 0; k < h.dim_h(p); ++k)
        for (std::size_t m = 0; m < h.dim_h(q); ++m) {
          Vec out;
          if (!h.has(p + q) || !l.try_bracket(p, h.at(p).h.vector(k), q, h.at(q).h.vector(m), out)) {
            if (space.dim(p + q) > 0)
              b.mark_bracket_undefined(p, k, q, m);
            continue;
          }
          b.set_bracket(p, k, q, m, h.class_of(p + q, out));
        }
    }
  return {b.build(false), std::move(h)};
}

} // namespace dgla

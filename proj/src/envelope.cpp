#include "dgla/envelope.hpp"

#include "dgla/gauge.hpp"

#include <fmt/format.h>

#include <mutex>

namespace dgla {

namespace {

// x * y skipping zero entries of x; ρ-matrices are very sparse
Matrix mul(const Matrix &x, const Matrix &y) {
  Matrix out(x.rows(), y.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      const Scalar &v = x(r, k);
      if (v == 0)
        continue;
      for (std::size_t c = 0; c < y.cols(); ++c)
        if (y(k, c) != 0)
          out(r, c) += v * y(k, c);
    }
  return out;
}

Matrix rho_of(const Envelope &env, int deg, const Vec &v) {
  Matrix out(env.dim(), env.dim());
  auto it = env.rho.find(deg);
  if (it == env.rho.end())
    return out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) {
      const Matrix &m = it->second[k];
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
          if (m(r, c) != 0)
            out(r, c) += v[k] * m(r, c);
    }
  return out;
}

bool has_degree(const Matrix &m, const std::vector<int> &deg, int shift) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0 && deg[r] != deg[c] + shift)
        return false;
  return true;
}

EnvElement zero_env(const ArtinPtr &a, std::size_t n) { return {a, std::vector<Matrix>(a->dim_m(), Matrix(n, n))}; }

EnvElement add(EnvElement x, const EnvElement &y, const Scalar &s = 1) {
  for (std::size_t p = 0; p < x.m.size(); ++p)
    x.m[p] = x.m[p] + s * y.m[p];
  return x;
}

// x ↦ M x and x ↦ x M for a constant matrix M
EnvElement left_const(const Matrix &c, const EnvElement &x) {
  EnvElement out = x;
  for (auto &m : out.m)
    m = mul(c, m);
  return out;
}
EnvElement right_const(const EnvElement &x, const Matrix &c) {
  EnvElement out = x;
  for (auto &m : out.m)
    m = mul(m, c);
  return out;
}

bool env_is_zero(const EnvElement &x) {
  for (const auto &m : x.m)
    if (!m.is_zero())
      return false;
  return true;
}

} // namespace

namespace {

// Row lists of nonzero entries, for the identity checks below.
using Sparse = std::vector<std::vector<std::pair<std::size_t, Scalar>>>;
using Accum = std::map<std::pair<std::size_t, std::size_t>, Scalar>;

Sparse to_sparse(const Matrix &m) {
  Sparse out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0)
        out[r].emplace_back(c, m(r, c));
  return out;
}

// acc += s * x * y
void add_product(Accum &acc, const Scalar &s, const Sparse &x, const Sparse &y) {
  for (std::size_t r = 0; r < x.size(); ++r)
    for (const auto &[k, v] : x[r])
      for (const auto &[c, w] : y[k])
        acc[{r, c}] += s * v * w;
}

void add_combination(Accum &acc, const Scalar &s, const Vec &coeffs, const std::vector<Sparse> &basis) {
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0)
      for (std::size_t r = 0; r < basis[k].size(); ++r)
        for (const auto &[c, w] : basis[k][r])
          acc[{r, c}] += s * coeffs[k] * w;
}

bool all_zero(const Accum &acc) {
  return std::all_of(acc.begin(), acc.end(), [](const auto &e) { return e.second == 0; });
}

} // namespace

void validate_envelope(const Envelope &env) {
  const Dgla &l = *env.l;
  const std::size_t n = env.dim();
  if (env.D.rows() != n || env.D.cols() != n)
    throw ShapeError("envelope: D has the wrong shape");
  if (!has_degree(env.D, env.v_degrees, 1))
    throw Error("envelope: D is not of degree 1");
  const Sparse d = to_sparse(env.D);
  Accum acc;
  add_product(acc, 1, d, d);
  if (!all_zero(acc))
    throw Error("envelope: D^2 != 0");
  std::map<int, std::vector<Sparse>> rho;
  for (int i = l.lo(); i <= l.hi(); ++i) {
    if (l.dim(i) == 0)
      continue;
    auto it = env.rho.find(i);
    if (it == env.rho.end() || it->second.size() != l.dim(i))
      throw ShapeError(fmt::format("envelope: missing ρ in degree {}", i));
    for (std::size_t k = 0; k < l.dim(i); ++k) {
      const Matrix &r = it->second[k];
      if (r.rows() != n || r.cols() != n)
        throw ShapeError(fmt::format("envelope: ρ({}) has the wrong shape", l.labels(i)[k]));
      if (!has_degree(r, env.v_degrees, i))
        throw Error(fmt::format("envelope: ρ({}) is not of degree {}", l.labels(i)[k], i));
      rho[i].push_back(to_sparse(r));
    }
  }
  auto commutator = [&](Accum &a, const Sparse &x, int p, const Sparse &y, int q) {
    add_product(a, 1, x, y);
    add_product(a, -Scalar(sign_of(static_cast<long long>(p) * q)), y, x);
  };
  for (const auto &[i, mats] : rho)
    for (std::size_t k = 0; k < mats.size(); ++k) {
      Accum a;
      commutator(a, d, 1, mats[k], i);
      Vec dx;
      if (l.space().in_window(i + 1)) {
        if (!l.try_d(i, unit_vector(l.dim(i), k), dx))
          continue;
        if (rho.count(i + 1))
          add_combination(a, -1, dx, rho.at(i + 1));
      }
      if (!all_zero(a))
        throw Error(fmt::format("envelope: ρ(d {}) != [D, ρ({})]", l.labels(i)[k], l.labels(i)[k]));
    }
  for (const auto &[i, mi] : rho)
    for (const auto &[j, mj] : rho) {
      const bool inside = l.space().in_window(i + j);
      for (std::size_t k = 0; k < mi.size(); ++k)
        for (std::size_t q = 0; q < mj.size(); ++q) {
          if (inside && !l.bracket_defined(i, k, j, q))
            continue;
          Accum a;
          commutator(a, mi[k], i, mj[q], j);
          if (inside && rho.count(i + j))
            add_combination(a, -1, l.basis_bracket(i, k, j, q), rho.at(i + j));
          if (!all_zero(a))
            throw Error(fmt::format("envelope: ρ[{}, {}] != [ρ{}, ρ{}]", l.labels(i)[k], l.labels(j)[q],
                                    l.labels(i)[k], l.labels(j)[q]));
        }
    }
}

namespace {

Envelope build_adjoint(const DglaPtr &lp) {
  const Dgla &l = *lp;
  if (l.open_top() && l.lo() < 0)
    throw Error(fmt::format("no associative envelope for {}: window starts below 0 and is open at the top", l.name()));
  Envelope env;
  env.l = lp;
  std::map<int, std::size_t> offset;
  for (int i = l.lo(); i <= l.hi(); ++i) {
    offset[i] = env.v_degrees.size();
    for (std::size_t k = 0; k < l.dim(i); ++k)
      env.v_degrees.push_back(i);
  }
  const std::size_t n = env.dim();
  env.D = Matrix(n, n);
  for (int i = l.lo(); i < l.hi(); ++i)
    for (std::size_t k = 0; k < l.dim(i); ++k) {
      Vec dx;
      if (!l.try_d(i, unit_vector(l.dim(i), k), dx))
        throw Error(fmt::format("no associative envelope for {}: d undefined inside the window", l.name()));
      for (std::size_t m = 0; m < dx.size(); ++m)
        env.D(offset[i + 1] + m, offset[i] + k) = dx[m];
    }
  for (int i = l.lo(); i <= l.hi(); ++i) {
    auto &col = env.rho[i];
    for (std::size_t k = 0; k < l.dim(i); ++k) {
      Matrix ad(n, n);
      for (int j = l.lo(); j <= l.hi(); ++j) {
        if (!l.space().in_window(i + j))
          continue;
        for (std::size_t q = 0; q < l.dim(j); ++q) {
          if (!l.bracket_defined(i, k, j, q))
            throw Error(fmt::format("no associative envelope for {}: [{}, {}] undefined", l.name(),
                                    l.labels(i)[k], l.labels(j)[q]));
          Vec br = l.basis_bracket(i, k, j, q);
          for (std::size_t m = 0; m < br.size(); ++m)
            ad(offset[i + j] + m, offset[j] + q) = br[m];
        }
      }
      col.push_back(std::move(ad));
    }
  }
  validate_envelope(env);
  return env;
}

} // namespace

Envelope adjoint_envelope(const DglaPtr &l) {
  static std::mutex mu;
  static std::map<const Dgla *, std::pair<std::weak_ptr<const Dgla>, Envelope>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(l.get());
  if (it != cache.end() && it->second.first.lock() == l)
    return it->second.second;
  Envelope env = build_adjoint(l);
  cache[l.get()] = {l, env};
  return env;
}

Envelope d2_envelope(const DglaPtr &d2) {
  Envelope env;
  env.l = d2;
  env.v_degrees = {0, 0, 1}; // p1, p2, q
  env.D = Matrix(3, 3);
  env.D(2, 0) = 1;
  Matrix c(3, 3), u(3, 3);
  c(0, 1) = 1;
  u(2, 1) = 1;
  env.rho[0] = {c};
  env.rho[1] = {u};
  validate_envelope(env);
  return env;
}

Envelope envelope_for(const DglaPtr &l) {
  if (l->name() == "D2")
    return d2_envelope(l);
  return adjoint_envelope(l);
}

EnvElement represent(const Envelope &env, const TensorElement &x) {
  if (x.l != env.l)
    throw Error("represent: element belongs to a different DGLA");
  EnvElement out = zero_env(x.a, env.dim());
  for (std::size_t p = 0; p < x.dim_m(); ++p)
    out.m[p] = rho_of(env, x.degree, x.component(p));
  return out;
}

EnvElement env_product(const EnvElement &x, const EnvElement &y) {
  const ArtinAlgebra &a = *x.a;
  const std::size_t n = a.dim_m();
  EnvElement out = zero_env(x.a, x.m.empty() ? 0 : x.m[0].rows());
  const auto &sp = a.sparse_products();
  for (std::size_t p = 0; p < n; ++p) {
    if (x.m[p].is_zero())
      continue;
    for (std::size_t q = 0; q < n; ++q) {
      if (sp[p * n + q].empty() || y.m[q].is_zero())
        continue;
      Matrix prod = mul(x.m[p], y.m[q]);
      for (const auto &[r, c] : sp[p * n + q])
        for (std::size_t i = 0; i < prod.rows(); ++i)
          for (std::size_t j = 0; j < prod.cols(); ++j)
            if (prod(i, j) != 0)
              out.m[r](i, j) += c * prod(i, j);
    }
  }
  return out;
}

EnvElement exp_minus_one(const Envelope &env, const TensorElement &a) {
  if (a.degree != 0)
    throw Error("exp_minus_one: gauge parameters have degree 0");
  EnvElement ra = represent(env, a), term = ra, out = ra;
  for (int k = 2; !env_is_zero(term); ++k) {
    term = env_product(term, ra);
    for (auto &m : term.m)
      m = Scalar(1, k) * m;
    out = add(out, term);
  }
  return out;
}

EnvElement pga_gauge_action(const Envelope &env, const EnvElement &g, const EnvElement &v) {
  if (g.a->table() != v.a->table())
    throw Error("pga_gauge_action: ring mismatch");
  // [g,v] - δg with δg = Dg - gD
  EnvElement base = add(env_product(g, v), env_product(v, g), -1);
  base = add(base, left_const(env.D, g), -1);
  base = add(base, right_const(g, env.D));
  EnvElement out = v, term = base;
  for (int i = 0; !env_is_zero(term); ++i) {
    out = add(out, term, i % 2 == 0 ? 1 : -1);
    term = env_product(term, g);
  }
  return out;
}

bool pga_agrees(const Envelope &env, const TensorElement &a, const TensorElement &x) {
  EnvElement lhs = represent(env, exp_action(a, x));
  EnvElement rhs = pga_gauge_action(env, exp_minus_one(env, a), represent(env, x));
  return lhs == rhs;
}

} // namespace dgla

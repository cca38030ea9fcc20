#include "dgla/artin.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace dgla {

ArtinAlgebra::ArtinAlgebra(std::vector<std::string> labels, std::vector<Scalar> table, std::string name)
    : name_(std::move(name)), labels_(std::move(labels)), table_(std::move(table)) {
  const std::size_t n = labels_.size();
  if (table_.size() != n * n * n)
    throw ShapeError(fmt::format("multiplication table needs {} entries, got {}", n * n * n, table_.size()));
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != n)
    throw Error("duplicate label in m-basis");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (coeff(i, j, k) != coeff(j, i, k))
          throw Error(fmt::format("multiplication not commutative on ({}, {})", labels_[i], labels_[j]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        Vec ei = unit_vector(n, i), ej = unit_vector(n, j), el = unit_vector(n, l);
        if (mul(mul(ei, ej), el) != mul(ei, mul(ej, el)))
          throw Error(fmt::format("multiplication not associative on ({}, {}, {})", labels_[i], labels_[j],
                                  labels_[l]));
      }
  sparse_.assign(n * n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (coeff(i, j, k) != 0)
          sparse_[i * n + j].emplace_back(k, coeff(i, j, k));
  Subspace cur = Subspace::full(n);
  filtration_.push_back(cur);
  while (cur.dim() > 0) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto &v : cur.vectors())
        gens.push_back(mul(unit_vector(n, i), v));
    Subspace next = Subspace::span(n, gens);
    if (next.dim() == cur.dim())
      throw Error("maximal ideal is not nilpotent");
    cur = next;
    filtration_.push_back(cur);
  }
}

ArtinAlgebra ArtinAlgebra::residue_field() { return ArtinAlgebra({}, {}, "K"); }

std::size_t ArtinAlgebra::index_of(const std::string &label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw Error(fmt::format("no m-basis label '{}'", label));
  return static_cast<std::size_t>(it - labels_.begin());
}

Vec ArtinAlgebra::mul(const Vec &a, const Vec &b) const {
  const std::size_t n = dim_m();
  if (a.size() != n || b.size() != n)
    throw ShapeError("ArtinAlgebra::mul: wrong vector size");
  Vec out = zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0)
      continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0)
        continue;
      Scalar ab = a[i] * b[j];
      for (std::size_t k = 0; k < n; ++k)
        if (coeff(i, j, k) != 0)
          out[k] += ab * coeff(i, j, k);
    }
  }
  return out;
}

Matrix ArtinAlgebra::mul_matrix(const Vec &a) const {
  const std::size_t n = dim_m();
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    m.set_column(j, mul(a, unit_vector(n, j)));
  return m;
}

Subspace ArtinAlgebra::power(int k) const {
  if (k < 1)
    throw Error("power: exponent must be at least 1");
  if (static_cast<std::size_t>(k) > filtration_.size())
    return Subspace::zero(dim_m());
  return filtration_[static_cast<std::size_t>(k - 1)];
}

Subspace ArtinAlgebra::socle() const {
  const std::size_t n = dim_m();
  // stack the maps v -> e_i v
  Matrix stacked(n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix mi = mul_matrix(unit_vector(n, i));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        stacked(i * n + r, c) = mi(r, c);
  }
  return n == 0 ? Subspace::zero(0) : kernel(stacked);
}

// ---------------------------------------------------------------------------
// Monomial quotients

Monomial parse_monomial(const std::string &text, const std::vector<std::string> &vars) {
  Monomial m(vars.size(), 0);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '*'))
      ++pos;
  };
  skip_space();
  if (text.substr(pos) == "1")
    return m;
  while (pos < text.size()) {
    std::size_t best = vars.size(), best_len = 0;
    for (std::size_t v = 0; v < vars.size(); ++v)
      if (vars[v].size() > best_len && text.compare(pos, vars[v].size(), vars[v]) == 0) {
        best = v;
        best_len = vars[v].size();
      }
    if (best == vars.size())
      throw Error(fmt::format("cannot parse monomial '{}' at position {}", text, pos));
    pos += best_len;
    int e = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      if (start == pos)
        throw Error(fmt::format("missing exponent in monomial '{}'", text));
      e = std::stoi(text.substr(start, pos - start));
    }
    m[best] += e;
    skip_space();
  }
  return m;
}

std::string monomial_label(const Monomial &m, const std::vector<std::string> &vars) {
  const bool short_names = std::all_of(vars.begin(), vars.end(), [](const auto &v) { return v.size() == 1; });
  std::string out;
  for (std::size_t v = 0; v < m.size(); ++v) {
    if (m[v] == 0)
      continue;
    if (!out.empty() && !short_names)
      out += "*";
    out += vars[v];
    if (m[v] > 1)
      out += fmt::format("^{}", m[v]);
  }
  return out.empty() ? "1" : out;
}

namespace {

bool divides(const Monomial &a, const Monomial &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i])
      return false;
  return true;
}

int total_degree(const Monomial &m) {
  int d = 0;
  for (int e : m)
    d += e;
  return d;
}

} // namespace

ArtinPtr build_truncated_poly(const std::vector<std::string> &vars, const std::vector<Monomial> &relations) {
  const std::size_t nv = vars.size();
  std::vector<int> bound(nv, -1);
  for (const auto &r : relations) {
    if (r.size() != nv)
      throw ShapeError("relation has the wrong number of exponents");
    if (total_degree(r) == 0)
      throw Error("relation 1 gives the zero ring");
    std::size_t nonzero = 0, which = 0;
    for (std::size_t v = 0; v < nv; ++v)
      if (r[v] != 0) {
        ++nonzero;
        which = v;
      }
    if (nonzero == 1 && (bound[which] < 0 || r[which] < bound[which]))
      bound[which] = r[which];
  }
  for (std::size_t v = 0; v < nv; ++v)
    if (bound[v] < 0)
      throw Error(fmt::format("monomial ideal is not cofinite: no pure power of {}", vars[v]));

  auto standard = [&](const Monomial &m) {
    return std::none_of(relations.begin(), relations.end(), [&](const Monomial &r) { return divides(r, m); });
  };
  std::vector<Monomial> basis;
  Monomial cur(nv, 0);
  // odometer over the box below the pure-power bounds
  while (true) {
    if (total_degree(cur) > 0 && standard(cur))
      basis.push_back(cur);
    std::size_t v = 0;
    while (v < nv) {
      if (++cur[v] < bound[v])
        break;
      cur[v] = 0;
      ++v;
    }
    if (v == nv)
      break;
  }
  std::sort(basis.begin(), basis.end(), [](const Monomial &a, const Monomial &b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db)
      return da < db;
    return a > b;
  });
  std::map<Monomial, std::size_t> index;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    index[basis[i]] = i;
    labels.push_back(monomial_label(basis[i], vars));
  }
  const std::size_t n = basis.size();
  std::vector<Scalar> table(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Monomial p(nv);
      for (std::size_t v = 0; v < nv; ++v)
        p[v] = basis[i][v] + basis[j][v];
      auto it = index.find(p);
      if (it != index.end())
        table[(i * n + j) * n + it->second] = 1;
    }
  std::string name = "K[" ;
  for (std::size_t v = 0; v < nv; ++v)
    name += (v ? "," : "") + vars[v];
  name += "]/(";
  for (std::size_t r = 0; r < relations.size(); ++r)
    name += (r ? "," : "") + monomial_label(relations[r], vars);
  name += ")";
  return std::make_shared<const ArtinAlgebra>(std::move(labels), std::move(table), name);
}

ArtinPtr build_truncated_poly(const std::vector<std::string> &vars, const std::vector<std::string> &relations) {
  std::vector<Monomial> rels;
  for (const auto &r : relations)
    rels.push_back(parse_monomial(r, vars));
  return build_truncated_poly(vars, rels);
}

// ---------------------------------------------------------------------------
// Morphisms

void validate_morphism(const AlgebraMorphism &f) {
  const std::size_t ns = f.source->dim_m(), nt = f.target->dim_m();
  if (f.matrix.rows() != nt || f.matrix.cols() != ns)
    throw ShapeError(fmt::format("algebra morphism must be {}x{}", nt, ns));
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = i; j < ns; ++j) {
      Vec ei = unit_vector(ns, i), ej = unit_vector(ns, j);
      if (f.apply(f.source->mul(ei, ej)) != f.target->mul(f.apply(ei), f.apply(ej)))
        throw Error(fmt::format("morphism not multiplicative on ({}, {})", f.source->labels()[i],
                                f.source->labels()[j]));
    }
}

AlgebraMorphism identity_morphism(const ArtinPtr &a) { return {a, a, Matrix::identity(a->dim_m())}; }

AlgebraMorphism augmentation(const ArtinPtr &a) {
  auto k = std::make_shared<const ArtinAlgebra>(ArtinAlgebra::residue_field());
  return {a, k, Matrix(0, a->dim_m())};
}

AlgebraMorphism compose(const AlgebraMorphism &g, const AlgebraMorphism &f) {
  if (f.target->dim_m() != g.source->dim_m())
    throw ShapeError("compose: target of f does not match source of g");
  return {f.source, g.target, g.matrix * f.matrix};
}

bool is_surjective(const AlgebraMorphism &f) { return rank(f.matrix) == f.target->dim_m(); }

bool is_isomorphism(const AlgebraMorphism &f) {
  return f.matrix.rows() == f.matrix.cols() && rank(f.matrix) == f.matrix.rows();
}

// ---------------------------------------------------------------------------
// Quotients and small extensions

QuotientMap quotient(const ArtinPtr &b, const Subspace &ideal) {
  const std::size_t n = b->dim_m();
  if (ideal.ambient_dim() != n)
    throw ShapeError("quotient: ideal lives in the wrong space");
  for (std::size_t i = 0; i < n; ++i)
    for (const auto &v : ideal.vectors())
      if (!ideal.contains(b->mul(unit_vector(n, i), v)))
        throw Error("quotient: subspace is not an ideal");
  Subspace s = complement(ideal, Subspace::full(n));
  Matrix p = s.basis().hstack(ideal.basis());
  Matrix proj = inverse(p).row_block(0, s.dim());
  const std::size_t q = s.dim();
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < q; ++a) {
    Vec col = s.vector(a);
    auto it = std::find_if(col.begin(), col.end(), [](const Scalar &x) { return x != 0; });
    labels.push_back(b->labels()[static_cast<std::size_t>(it - col.begin())]);
  }
  std::vector<Scalar> table(q * q * q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t c = 0; c < q; ++c) {
      Vec prod = proj * b->mul(s.vector(a), s.vector(c));
      for (std::size_t k = 0; k < q; ++k)
        table[(a * q + c) * q + k] = prod[k];
    }
  std::vector<std::string> gens;
  for (const auto &v : ideal.vectors()) {
    std::string t;
    for (std::size_t i = 0; i < n; ++i)
      if (v[i] != 0)
        t += (t.empty() ? "" : "+") + (v[i] == 1 ? "" : to_string(v[i]) + "*") + b->labels()[i];
    gens.push_back(t);
  }
  std::string name = b->name() + "/(";
  for (std::size_t i = 0; i < gens.size(); ++i)
    name += (i ? "," : "") + gens[i];
  name += ")";
  auto qa = std::make_shared<const ArtinAlgebra>(std::move(labels), std::move(table), name);
  return QuotientMap{b, qa, AlgebraMorphism{b, qa, proj}, s.basis(), ideal};
}

SmallExtension small_extension(const ArtinPtr &b, const Subspace &ideal) {
  const std::size_t n = b->dim_m();
  for (std::size_t i = 0; i < n; ++i)
    for (const auto &v : ideal.vectors())
      if (!is_zero(b->mul(unit_vector(n, i), v)))
        throw Error("small_extension: kernel is not annihilated by the maximal ideal");
  return SmallExtension{quotient(b, ideal)};
}

std::vector<SmallExtension> small_extension_tower(const ArtinPtr &a) {
  const std::size_t n = a->dim_m();
  const auto &filt = a->filtration();
  std::vector<Vec> order;
  // filt[j] = m^{j+1}; walk from the deepest nonzero power upwards
  for (std::size_t j = filt.size() - 1; j-- > 0;) {
    Subspace deeper = filt[j + 1];
    for (const auto &v : complement(deeper, filt[j]).vectors())
      order.push_back(v);
  }
  std::vector<SmallExtension> tower;
  ArtinPtr cur = a;
  Matrix cumulative = Matrix::identity(n);
  for (const auto &v : order) {
    Subspace ker = Subspace::span(cur->dim_m(), {cumulative * v});
    SmallExtension step = small_extension(cur, ker);
    cumulative = step.projection.matrix * cumulative;
    cur = step.quotient;
    tower.push_back(std::move(step));
  }
  return tower;
}

// ---------------------------------------------------------------------------
// Fibred products

namespace {

std::string combination(const Vec &v, const std::vector<std::string> &labels) {
  std::string t;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0)
      continue;
    std::string coef = v[i] == 1 ? "" : v[i] == -1 ? "-" : to_string(v[i]);
    if (!t.empty() && v[i] > 0)
      t += "+";
    t += coef + labels[i];
  }
  return t.empty() ? "0" : t;
}

} // namespace

FibredProduct fibred_product(const AlgebraMorphism &f, const AlgebraMorphism &g) {
  validate_morphism(f);
  validate_morphism(g);
  if (f.target->dim_m() != g.target->dim_m() || f.target->table() != g.target->table())
    throw Error("fibred_product: morphisms have incompatible targets");
  const std::size_t nb = f.source->dim_m(), nc = g.source->dim_m(), na = f.target->dim_m();
  Matrix fg(na, nb + nc);
  for (std::size_t r = 0; r < na; ++r) {
    for (std::size_t c = 0; c < nb; ++c)
      fg(r, c) = f.matrix(r, c);
    for (std::size_t c = 0; c < nc; ++c)
      fg(r, nb + c) = -g.matrix(r, c);
  }
  Subspace w = na == 0 ? Subspace::full(nb + nc) : kernel(fg);
  const std::size_t n = w.dim();
  auto split = [&](const Vec &v) {
    return std::make_pair(Vec(v.begin(), v.begin() + static_cast<long>(nb)), Vec(v.begin() + static_cast<long>(nb), v.end()));
  };
  std::vector<std::string> labels;
  for (const auto &v : w.vectors()) {
    auto [vb, vc] = split(v);
    labels.push_back("(" + combination(vb, f.source->labels()) + ";" + combination(vc, g.source->labels()) + ")");
  }
  std::vector<Scalar> table(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      auto [ab, ac] = split(w.vector(a));
      auto [cb, cc] = split(w.vector(c));
      Vec prod = f.source->mul(ab, cb);
      Vec pc = g.source->mul(ac, cc);
      prod.insert(prod.end(), pc.begin(), pc.end());
      Vec coords = w.coordinates(prod);
      for (std::size_t k = 0; k < n; ++k)
        table[(a * n + c) * n + k] = coords[k];
    }
  auto d = std::make_shared<const ArtinAlgebra>(
      std::move(labels), std::move(table),
      f.source->name() + " x_" + f.target->name() + " " + g.source->name());
  Matrix to_b(nb, n), to_c(nc, n);
  for (std::size_t k = 0; k < n; ++k) {
    Vec v = w.vector(k);
    for (std::size_t r = 0; r < nb; ++r)
      to_b(r, k) = v[r];
    for (std::size_t r = 0; r < nc; ++r)
      to_c(r, k) = v[nb + r];
  }
  return FibredProduct{d, {d, f.source, to_b}, {d, g.source, to_c}, f, g};
}

AlgebraMorphism mediating_morphism(const FibredProduct &fp, const AlgebraMorphism &p, const AlgebraMorphism &q) {
  if (p.source->dim_m() != q.source->dim_m())
    throw Error("mediating_morphism: cone legs have different sources");
  if (fp.f.matrix * p.matrix != fp.g.matrix * q.matrix)
    throw Error("mediating_morphism: cone does not commute");
  const std::size_t n = p.source->dim_m();
  // columns of the embedding D -> B ⊕ C
  std::vector<Vec> cols;
  for (std::size_t k = 0; k < fp.product->dim_m(); ++k) {
    Vec v = fp.to_b.matrix.column(k);
    Vec vc = fp.to_c.matrix.column(k);
    v.insert(v.end(), vc.begin(), vc.end());
    cols.push_back(v);
  }
  const std::size_t amb = fp.to_b.matrix.rows() + fp.to_c.matrix.rows();
  Subspace w(amb, Matrix::from_columns(amb, cols));
  Matrix h(fp.product->dim_m(), n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec v = p.matrix.column(i);
    Vec vc = q.matrix.column(i);
    v.insert(v.end(), vc.begin(), vc.end());
    h.set_column(i, w.coordinates(v));
  }
  AlgebraMorphism out{p.source, fp.product, h};
  validate_morphism(out);
  return out;
}

} // namespace dgla

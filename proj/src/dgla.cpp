#include "dgla/dgla.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>

namespace dgla {

void BracketBlock::rebuild_sparse() {
  sparse.assign(di * dj, {});
  for (std::size_t k = 0; k < di; ++k)
    for (std::size_t l = 0; l < dj; ++l)
      for (std::size_t m = 0; m < dk; ++m) {
        const Scalar &v = at(k, l, m);
        if (v != 0)
          sparse[k * dj + l].emplace_back(m, v);
      }
}

// ---------------------------------------------------------------------------
// Dgla

bool Dgla::d_defined(int deg, std::size_t k) const {
  auto it = diff_defined_.find(deg);
  if (it == diff_defined_.end())
    return true;
  return it->second.at(k) != 0;
}

bool Dgla::d_defined(int deg) const {
  auto it = diff_defined_.find(deg);
  if (it == diff_defined_.end())
    return true;
  return std::all_of(it->second.begin(), it->second.end(), [](char c) { return c != 0; });
}

bool Dgla::try_d(int deg, const Vec &v, Vec &out) const {
  if (!space_.in_window(deg)) {
    out = zeros(dim(deg + 1));
    return true;
  }
  if (v.size() != dim(deg))
    throw ShapeError(fmt::format("d: vector of size {} in degree {} of dim {}", v.size(), deg, dim(deg)));
  const auto &def = diff_defined_.at(deg);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0 && !def[k])
      return false;
  out = diff_.at(deg) * v;
  return true;
}

Vec Dgla::d(int deg, const Vec &v) const {
  Vec out;
  if (!try_d(deg, v, out))
    throw WindowError(fmt::format("differential out of degree {} leaves the window", deg));
  return out;
}

const Matrix &Dgla::d_block(int deg) const {
  if (!space_.in_window(deg))
    throw Error(fmt::format("d_block: degree {} outside the window", deg));
  if (!d_defined(deg))
    throw WindowError(fmt::format("differential out of degree {} leaves the window", deg));
  return diff_.at(deg);
}

GradedMap Dgla::differential() const {
  GradedMap m{1, {}};
  for (int deg = lo(); deg <= hi(); ++deg)
    if (d_defined(deg))
      m.blocks.emplace(deg, diff_.at(deg));
  return m;
}

const BracketBlock *Dgla::block(int i, int j) const {
  auto it = bracket_.find({i, j});
  return it == bracket_.end() ? nullptr : &it->second;
}

bool Dgla::bracket_defined(int i, std::size_t k, int j, std::size_t l) const {
  const BracketBlock *b = block(i, j);
  return b == nullptr || b->is_defined(k, l);
}

Vec Dgla::basis_bracket(int i, std::size_t k, int j, std::size_t l) const {
  const BracketBlock *b = block(i, j);
  Vec out = zeros(dim(i + j));
  if (b == nullptr)
    return out;
  if (!b->is_defined(k, l))
    throw WindowError(fmt::format("bracket [{}, {}] leaves the window", labels(i).at(k), labels(j).at(l)));
  for (const auto &[m, v] : b->sparse[k * b->dj + l])
    out[m] = v;
  return out;
}

bool Dgla::try_bracket(int i, const Vec &a, int j, const Vec &b, Vec &out) const {
  if (a.size() != dim(i) || b.size() != dim(j))
    throw ShapeError(fmt::format("bracket: vectors of sizes {}, {} in degrees {}, {}", a.size(), b.size(), i, j));
  out = zeros(dim(i + j));
  const BracketBlock *blk = block(i, j);
  if (blk == nullptr)
    return true;
  Scalar ab;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0)
      continue;
    for (std::size_t l = 0; l < b.size(); ++l) {
      if (b[l] == 0)
        continue;
      if (!blk->is_defined(k, l))
        return false;
      const auto &terms = blk->sparse[k * blk->dj + l];
      if (terms.empty())
        continue;
      ab = a[k] * b[l];
      for (const auto &[m, v] : terms)
        out[m] += ab * v;
    }
  }
  return true;
}

Vec Dgla::bracket(int i, const Vec &a, int j, const Vec &b) const {
  Vec out;
  if (!try_bracket(i, a, j, b, out))
    throw WindowError(fmt::format("bracket of degrees {} and {} leaves the window", i, j));
  return out;
}

bool Dgla::is_abelian() const {
  for (const auto &[key, blk] : bracket_) {
    for (const auto &s : blk.sparse)
      if (!s.empty())
        return false;
    if (std::any_of(blk.defined.begin(), blk.defined.end(), [](char c) { return c == 0; }))
      return false;
  }
  return true;
}

bool Dgla::has_zero_differential() const {
  for (const auto &[deg, m] : diff_)
    if (!m.is_zero() || !d_defined(deg))
      return false;
  return true;
}

const CohomologyData &Dgla::cohomology() const {
  std::call_once(cohomology_once_, [this] {
    cohomology_ = std::make_unique<CohomologyData>(dgla::cohomology(space_, differential()));
  });
  return *cohomology_;
}

const CohomologyData &cohomology(const Dgla &l) { return l.cohomology(); }

// ---------------------------------------------------------------------------
// Builder

DglaBuilder::DglaBuilder(GradedSpace space, bool open_top, std::string name)
    : space_(std::move(space)), open_top_(open_top), name_(std::move(name)) {
  for (int deg = space_.lo(); deg <= space_.hi(); ++deg) {
    const std::size_t n = space_.dim(deg);
    diff_.emplace(deg, Matrix(space_.dim(deg + 1), n));
    const bool defined = !(open_top_ && deg == space_.hi());
    diff_defined_.emplace(deg, std::vector<char>(n, defined ? 1 : 0));
  }
}

void DglaBuilder::set_d(int deg, std::size_t k, std::size_t m, const Scalar &value) {
  if (!space_.in_window(deg) || !space_.in_window(deg + 1))
    throw Error(fmt::format("set_d: no target for degree {}", deg));
  Matrix &blk = diff_.at(deg);
  if (k >= blk.cols() || m >= blk.rows())
    throw ShapeError(fmt::format("set_d: index out of range in degree {}", deg));
  blk(m, k) = value;
}

void DglaBuilder::set_d_block(int deg, const Matrix &block) {
  if (!space_.in_window(deg))
    throw Error(fmt::format("set_d_block: degree {} outside the window", deg));
  Matrix &blk = diff_.at(deg);
  if (block.rows() != blk.rows() || block.cols() != blk.cols())
    throw ShapeError(fmt::format("differential block out of degree {} must be {}x{}, got {}x{}", deg,
                                 blk.rows(), blk.cols(), block.rows(), block.cols()));
  blk = block;
}

void DglaBuilder::mark_d_undefined(int deg, std::size_t k) { diff_defined_.at(deg).at(k) = 0; }

BracketBlock *DglaBuilder::block_for(int i, int j) {
  if (!space_.in_window(i) || !space_.in_window(j))
    throw Error(fmt::format("bracket degrees ({}, {}) outside the window", i, j));
  auto key = std::make_pair(i, j);
  auto it = bracket_.find(key);
  if (it == bracket_.end()) {
    it = bracket_.emplace(key, BracketBlock(space_.dim(i), space_.dim(j), space_.dim(i + j))).first;
    given_.emplace(key, std::vector<char>(space_.dim(i) * space_.dim(j), 0));
  }
  return &it->second;
}

void DglaBuilder::set_bracket(int i, std::size_t k, int j, std::size_t l, int target, std::size_t m,
                              const Scalar &value) {
  if (k >= space_.dim(i) || l >= space_.dim(j))
    throw ShapeError(fmt::format("set_bracket: basis index out of range for degrees ({}, {})", i, j));
  if (target != i + j) {
    if (value != 0)
      stray_.push_back({i, j, target, k, l, m, value});
    return;
  }
  if (!space_.in_window(target)) {
    if (value != 0)
      throw Error(fmt::format("bracket of degrees ({}, {}) has no target degree {}", i, j, target));
    return;
  }
  if (m >= space_.dim(target))
    throw ShapeError(fmt::format("set_bracket: output index {} out of range in degree {}", m, target));
  BracketBlock *b = block_for(i, j);
  b->at(k, l, m) = value;
  given_.at({i, j})[k * b->dj + l] = 1;
}

void DglaBuilder::set_bracket(int i, std::size_t k, int j, std::size_t l, const Vec &value) {
  if (value.size() != space_.dim(i + j))
    throw ShapeError("set_bracket: value has the wrong dimension");
  if (!space_.in_window(i + j)) {
    if (!is_zero(value))
      throw Error(fmt::format("bracket of degrees ({}, {}) has no target degree", i, j));
    return;
  }
  BracketBlock *b = block_for(i, j);
  for (std::size_t m = 0; m < value.size(); ++m)
    b->at(k, l, m) = value[m];
  given_.at({i, j})[k * b->dj + l] = 1;
}

void DglaBuilder::mark_bracket_undefined(int i, std::size_t k, int j, std::size_t l) {
  if (space_.in_window(i + j)) {
    BracketBlock *b = block_for(i, j);
    b->defined[k * b->dj + l] = 0;
    given_.at({i, j})[k * b->dj + l] = 1;
  }
  // out-of-window pairs are handled by the window policy in build()
}

DglaPtr DglaBuilder::build(bool symmetrize) const {
  auto l = std::shared_ptr<Dgla>(new Dgla());
  l->name_ = name_;
  l->space_ = space_;
  l->open_top_ = open_top_;
  l->diff_ = diff_;
  l->diff_defined_ = diff_defined_;
  l->stray_ = stray_;

  auto bracket = bracket_;
  if (symmetrize) {
    for (const auto &[key, blk] : bracket_) {
      const auto [i, j] = key;
      const auto &given = given_.at(key);
      auto rev_key = std::make_pair(j, i);
      auto rit = bracket.find(rev_key);
      if (rit == bracket.end())
        rit = bracket.emplace(rev_key, BracketBlock(blk.dj, blk.di, blk.dk)).first;
      auto git = given_.find(rev_key);
      const Scalar sgn = -sign_of(static_cast<long long>(i) * j);
      for (std::size_t k = 0; k < blk.di; ++k)
        for (std::size_t m = 0; m < blk.dj; ++m) {
          if (!given[k * blk.dj + m])
            continue;
          bool rev_given = git != given_.end() && git->second[m * blk.di + k];
          if (rev_given)
            continue;
          BracketBlock &rb = rit->second;
          rb.defined[m * rb.dj + k] = blk.defined[k * blk.dj + m];
          for (std::size_t t = 0; t < blk.dk; ++t)
            rb.at(m, k, t) = sgn * blk.at(k, m, t);
        }
    }
  }

  // open-top pairs landing above the window are undefined
  if (open_top_) {
    for (int i = space_.lo(); i <= space_.hi(); ++i)
      for (int j = space_.lo(); j <= space_.hi(); ++j) {
        if (i + j <= space_.hi() || space_.dim(i) == 0 || space_.dim(j) == 0)
          continue;
        BracketBlock b(space_.dim(i), space_.dim(j), 0);
        std::fill(b.defined.begin(), b.defined.end(), 0);
        bracket[{i, j}] = std::move(b);
      }
  }
  for (auto &[key, blk] : bracket)
    blk.rebuild_sparse();
  l->bracket_ = std::move(bracket);
  return l;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string describe(const Vec &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

struct BasisRef {
  int deg;
  std::size_t idx;
};

} // namespace

ValidationReport validate_dgla(const Dgla &l, std::size_t max_violations) {
  ValidationReport rep;
  auto full = [&] { return rep.violations.size() >= max_violations; };
  auto label = [&](int deg, std::size_t k) { return l.labels(deg).at(k); };
  auto unit = [&](int deg, std::size_t k) { return unit_vector(l.dim(deg), k); };

  for (const auto &s : l.stray_entries()) {
    if (full())
      return rep;
    rep.violations.push_back({"grading",
                              {label(s.i, s.k), label(s.j, s.l)},
                              fmt::format("entry of degree ({}, {}) targets degree {}", s.i, s.j, s.target)});
  }

  const int lo = l.lo(), hi = l.hi();

  // d^2 = 0
  for (int i = lo; i <= hi; ++i)
    for (std::size_t k = 0; k < l.dim(i); ++k) {
      Vec dv, ddv;
      if (!l.try_d(i, unit(i, k), dv) || !l.try_d(i + 1, dv, ddv)) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      if (!is_zero(ddv)) {
        if (full())
          return rep;
        rep.violations.push_back({"d^2", {label(i, k)}, describe(ddv)});
      }
    }

  // graded antisymmetry
  for (int i = lo; i <= hi; ++i)
    for (int j = i; j <= hi; ++j)
      for (std::size_t k = 0; k < l.dim(i); ++k)
        for (std::size_t m = (i == j ? k : 0); m < l.dim(j); ++m) {
          const bool d1 = l.bracket_defined(i, k, j, m), d2 = l.bracket_defined(j, m, i, k);
          if (d1 != d2) {
            if (full())
              return rep;
            rep.violations.push_back({"antisymmetry", {label(i, k), label(j, m)}, "definedness differs"});
            continue;
          }
          if (!d1) {
            ++rep.skipped;
            continue;
          }
          ++rep.checked;
          Vec a = l.basis_bracket(i, k, j, m);
          Vec b = l.basis_bracket(j, m, i, k);
          Vec s = a + Scalar(sign_of(static_cast<long long>(i) * j)) * b;
          if (!is_zero(s)) {
            if (full())
              return rep;
            rep.violations.push_back({"antisymmetry", {label(i, k), label(j, m)}, describe(s)});
          }
        }

  // Leibniz: d[a,b] = [da,b] + (-1)^i [a,db]
  for (int i = lo; i <= hi; ++i)
    for (int j = lo; j <= hi; ++j) {
      if (!l.space().in_window(i + j))
        continue;
      for (std::size_t k = 0; k < l.dim(i); ++k)
        for (std::size_t m = 0; m < l.dim(j); ++m) {
          Vec a = unit(i, k), b = unit(j, m);
          Vec ab, dab, da, db, t1, t2;
          if (!l.try_bracket(i, a, j, b, ab) || !l.try_d(i + j, ab, dab) || !l.try_d(i, a, da) ||
              !l.try_d(j, b, db) || !l.try_bracket(i + 1, da, j, b, t1) ||
              !l.try_bracket(i, a, j + 1, db, t2)) {
            ++rep.skipped;
            continue;
          }
          ++rep.checked;
          Vec r = dab - t1 - Scalar(sign_of(i)) * t2;
          if (!is_zero(r)) {
            if (full())
              return rep;
            rep.violations.push_back({"leibniz", {label(i, k), label(j, m)}, describe(r)});
          }
        }
    }

  // Jacobi: [a,[b,c]] = [[a,b],c] + (-1)^{ij} [b,[a,c]], on sparse structure constants
  using Terms = std::vector<std::pair<std::size_t, Scalar>>;
  static const Terms kNone;
  auto terms = [&](int i, std::size_t k, int j, std::size_t m) -> const Terms * {
    const BracketBlock *b = l.block(i, j);
    if (b == nullptr)
      return &kNone;
    if (!b->is_defined(k, m))
      return nullptr;
    return &b->sparse[k * b->dj + m];
  };
  std::map<std::size_t, Scalar> acc;
  auto add = [&](const Terms *outer, const Scalar &sign, auto &&inner) {
    for (const auto &[n, v] : *outer) {
      const Terms *r = inner(n);
      if (r == nullptr)
        return false;
      for (const auto &[q, w] : *r)
        acc[q] += sign * v * w;
    }
    return true;
  };
  for (int i = lo; i <= hi; ++i)
    for (int j = lo; j <= hi; ++j)
      for (int t = lo; t <= hi; ++t) {
        if (!l.space().in_window(j + t) && !l.space().in_window(i + j) && !l.space().in_window(i + t))
          continue;
        const Scalar sij(sign_of(static_cast<long long>(i) * j));
        for (std::size_t ka = 0; ka < l.dim(i); ++ka)
          for (std::size_t kb = 0; kb < l.dim(j); ++kb)
            for (std::size_t kc = 0; kc < l.dim(t); ++kc) {
              const Terms *bc = terms(j, kb, t, kc), *ab = terms(i, ka, j, kb), *ac = terms(i, ka, t, kc);
              acc.clear();
              if (bc == nullptr || ab == nullptr || ac == nullptr ||
                  !add(bc, Scalar(1), [&](std::size_t n) { return terms(i, ka, j + t, n); }) ||
                  !add(ab, Scalar(-1), [&](std::size_t n) { return terms(i + j, n, t, kc); }) ||
                  !add(ac, -sij, [&](std::size_t n) { return terms(j, kb, i + t, n); })) {
                ++rep.skipped;
                continue;
              }
              ++rep.checked;
              bool zero = true;
              for (const auto &[q, v] : acc)
                zero = zero && v == 0;
              if (!zero) {
                if (full())
                  return rep;
                Vec r = zeros(l.dim(i + j + t));
                for (const auto &[q, v] : acc)
                  r[q] = v;
                rep.violations.push_back(
                    {"jacobi", {label(i, ka), label(j, kb), label(t, kc)}, describe(r)});
              }
            }
      }
  return rep;
}

// ---------------------------------------------------------------------------
// Morphisms

Vec DglaMorphism::apply(int deg, const Vec &v) const {
  auto it = blocks.find(deg);
  if (it == blocks.end()) {
    if (source->dim(deg) == 0 || target->dim(deg) == 0)
      return zeros(target->dim(deg));
    throw Error(fmt::format("morphism has no block in degree {}", deg));
  }
  return it->second * v;
}

ValidationReport validate_morphism(const DglaMorphism &f) {
  const Dgla &s = *f.source;
  const Dgla &t = *f.target;
  ValidationReport rep;
  for (const auto &[deg, m] : f.blocks)
    if (m.rows() != t.dim(deg) || m.cols() != s.dim(deg))
      rep.violations.push_back({"shape", {fmt::format("degree {}", deg)},
                                fmt::format("expected {}x{}, got {}x{}", t.dim(deg), s.dim(deg), m.rows(), m.cols())});
  if (!rep.passed())
    return rep;

  for (int i = s.lo(); i <= s.hi(); ++i)
    for (std::size_t k = 0; k < s.dim(i); ++k) {
      Vec e = unit_vector(s.dim(i), k);
      Vec de, fde, fe, dfe;
      if (!s.try_d(i, e, de)) {
        ++rep.skipped;
        continue;
      }
      fde = f.apply(i + 1, de);
      fe = f.apply(i, e);
      if (!t.try_d(i, fe, dfe)) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      if (fde != dfe)
        rep.violations.push_back({"chain map", {s.labels(i)[k]}, describe(fde - dfe)});
    }

  for (int i = s.lo(); i <= s.hi(); ++i)
    for (int j = s.lo(); j <= s.hi(); ++j)
      for (std::size_t k = 0; k < s.dim(i); ++k)
        for (std::size_t m = 0; m < s.dim(j); ++m) {
          Vec a = unit_vector(s.dim(i), k), b = unit_vector(s.dim(j), m);
          Vec ab, fab;
          if (!s.try_bracket(i, a, j, b, ab)) {
            ++rep.skipped;
            continue;
          }
          Vec fa = f.apply(i, a), fb = f.apply(j, b);
          if (!t.try_bracket(i, fa, j, fb, fab)) {
            ++rep.skipped;
            continue;
          }
          ++rep.checked;
          Vec lhs = f.apply(i + j, ab);
          if (lhs != fab)
            rep.violations.push_back({"bracket", {s.labels(i)[k], s.labels(j)[m]}, describe(lhs - fab)});
        }
  return rep;
}

DglaMorphism identity_morphism(const DglaPtr &l) {
  DglaMorphism f{l, l, {}};
  for (int deg = l->lo(); deg <= l->hi(); ++deg)
    f.blocks.emplace(deg, Matrix::identity(l->dim(deg)));
  return f;
}

DglaMorphism zero_morphism(const DglaPtr &source, const DglaPtr &target) {
  DglaMorphism f{source, target, {}};
  for (int deg = source->lo(); deg <= source->hi(); ++deg)
    f.blocks.emplace(deg, Matrix(target->dim(deg), source->dim(deg)));
  return f;
}

std::map<int, Matrix> induced_cohomology_maps(const DglaMorphism &f) {
  const Dgla &s = *f.source;
  const Dgla &t = *f.target;
  const CohomologyData &hs = cohomology(s), &ht = cohomology(t);
  std::map<int, Matrix> out;
  const int lo = std::min(s.lo(), t.lo()), hi = std::max(s.hi(), t.hi());
  for (int deg = lo; deg <= hi; ++deg) {
    const bool ks = hs.has(deg) || s.dim(deg) == 0;
    const bool kt = ht.has(deg) || t.dim(deg) == 0;
    if (!ks || !kt)
      continue;
    const std::size_t ns = hs.dim_h(deg), nt = ht.dim_h(deg);
    Matrix m(nt, ns);
    for (std::size_t c = 0; c < ns; ++c) {
      Vec img = f.apply(deg, hs.at(deg).h.vector(c));
      m.set_column(c, ht.class_of(deg, img));
    }
    out.emplace(deg, std::move(m));
  }
  return out;
}

bool is_quasi_isomorphism(const DglaMorphism &f) {
  for (const auto &[deg, m] : induced_cohomology_maps(f))
    if (m.rows() != m.cols() || rank(m) != m.rows())
      return false;
  return true;
}

} // namespace dgla

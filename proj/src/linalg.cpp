#include "dgla/linalg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>

namespace dgla {

Scalar parse_scalar(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s.push_back(c);
  if (s.empty())
    throw Error("empty scalar");
  if (s.front() == '+')
    s.erase(s.begin());
  auto valid = [](const std::string &part) {
    std::size_t i = (!part.empty() && part[0] == '-') ? 1 : 0;
    if (i >= part.size())
      return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den))
    throw Error(fmt::format("malformed rational '{}'", text));
  mpz_class n(num), d(den);
  if (d == 0)
    throw Error(fmt::format("zero denominator in '{}'", text));
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar &s) { return s.get_str(); }

// ---------------------------------------------------------------------------

Vec zeros(std::size_t n) { return Vec(n); }

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(const Vec &v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar &x) { return sgn(x) == 0; });
}

void axpy(Vec &y, const Scalar &a, const Vec &x) {
  if (y.size() != x.size())
    throw ShapeError("axpy: length mismatch");
  if (sgn(a) == 0)
    return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0)
      y[i] += a * x[i];
}

Vec operator+(const Vec &a, const Vec &b) {
  Vec r = a;
  axpy(r, 1, b);
  return r;
}

Vec operator-(const Vec &a, const Vec &b) {
  Vec r = a;
  axpy(r, -1, b);
  return r;
}

Vec operator-(const Vec &a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = -a[i];
  return r;
}

Vec operator*(const Scalar &s, const Vec &v) {
  Vec r(v.size());
  if (sgn(s) == 0)
    return r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0)
      r[i] = s * v[i];
  return r;
}

// ---------------------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto &r : rows) {
    if (r.size() != cols_)
      throw ShapeError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec> &cols) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    m.set_column(c, cols[c]);
  return m;
}

Vec Matrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    v[r] = (*this)(r, c);
  return v;
}

Vec Matrix::row(std::size_t r) const {
  return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

void Matrix::set_column(std::size_t c, const Vec &v) {
  if (v.size() != rows_)
    throw ShapeError("set_column: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r)
    (*this)(r, c) = v[r];
}

std::vector<Vec> Matrix::columns() const {
  std::vector<Vec> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    out.push_back(column(c));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar &x) { return sgn(x) == 0; });
}

Matrix Matrix::operator*(const Matrix &o) const {
  if (cols_ != o.rows_)
    throw ShapeError(fmt::format("matrix product {}x{} * {}x{}", rows_, cols_, o.rows_, o.cols_));
  Matrix p(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar &a = (*this)(i, k);
      if (sgn(a) == 0)
        continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (sgn(o(k, j)) != 0)
          p(i, j) += a * o(k, j);
    }
  return p;
}

Vec Matrix::operator*(const Vec &v) const {
  if (cols_ != v.size())
    throw ShapeError(fmt::format("matrix-vector product {}x{} * {}", rows_, cols_, v.size()));
  Vec out(rows_);
  for (std::size_t k = 0; k < cols_; ++k) {
    if (sgn(v[k]) == 0)
      continue;
    for (std::size_t i = 0; i < rows_; ++i)
      if (sgn((*this)(i, k)) != 0)
        out[i] += (*this)(i, k) * v[k];
  }
  return out;
}

Matrix Matrix::operator+(const Matrix &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw ShapeError("matrix sum shape mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw ShapeError("matrix difference shape mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] -= o.data_[i];
  return r;
}

Matrix operator*(const Scalar &s, const Matrix &m) {
  Matrix r = m;
  for (auto &x : r.data_)
    x *= s;
  return r;
}

Matrix Matrix::hstack(const Matrix &o) const {
  if (rows_ != o.rows_)
    throw ShapeError("hstack row mismatch");
  Matrix r(rows_, cols_ + o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j)
      r(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < o.cols_; ++j)
      r(i, cols_ + j) = o(i, j);
  }
  return r;
}

Matrix Matrix::row_block(std::size_t r0, std::size_t r1) const {
  Matrix r(r1 - r0, cols_);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      r(i - r0, j) = (*this)(i, j);
  return r;
}

Matrix kron(const Matrix &a, const Matrix &b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0)
        continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

// ---------------------------------------------------------------------------

Rref rref(const Matrix &a) {
  Rref out{a, {}};
  Matrix &m = out.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && sgn(m(piv, col)) == 0)
      ++piv;
    if (piv == m.rows())
      continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m(piv, j), m(row, j));
    Scalar inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j)
      m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || sgn(m(i, col)) == 0)
        continue;
      Scalar f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (sgn(m(row, j)) != 0)
          m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

std::size_t rank(const Matrix &a) { return rref(a).pivots.size(); }

Matrix inverse(const Matrix &a) {
  if (a.rows() != a.cols())
    throw ShapeError("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Rref r = rref(a.hstack(Matrix::identity(n)));
  if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] >= n))
    throw Error("inverse of singular matrix");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv(i, j) = r.reduced(i, n + j);
  return inv;
}

Vec EchelonSpan::reduce(Vec v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const std::size_t p = pivots_[k];
    if (sgn(v[p]) == 0)
      continue;
    Scalar f = v[p];
    axpy(v, -f, rows_[k]);
  }
  return v;
}

bool EchelonSpan::add(const Vec &v) {
  if (v.size() != ambient_)
    throw ShapeError("EchelonSpan::add length mismatch");
  Vec r = reduce(v);
  auto it = std::find_if(r.begin(), r.end(), [](const Scalar &x) { return sgn(x) != 0; });
  if (it == r.end())
    return false;
  const std::size_t p = static_cast<std::size_t>(it - r.begin());
  Scalar inv = 1 / r[p];
  r = inv * r;
  // keep existing rows reduced with respect to the new pivot
  for (auto &row : rows_)
    if (sgn(row[p]) != 0) {
      Scalar f = row[p];
      axpy(row, -f, r);
    }
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

bool EchelonSpan::contains(const Vec &v) const {
  if (v.size() != ambient_)
    throw ShapeError("EchelonSpan::contains length mismatch");
  return is_zero(reduce(v));
}

// ---------------------------------------------------------------------------

Subspace::Subspace(std::size_t ambient, Matrix basis) : ambient_(ambient), basis_(std::move(basis)) {
  if (basis_.cols() == 0)
    basis_ = Matrix(ambient_, 0);
  if (basis_.rows() != ambient_)
    throw ShapeError("subspace basis has wrong ambient dimension");
  if (rank(basis_) != basis_.cols())
    throw Error("subspace basis columns are dependent");
}

Subspace Subspace::zero(std::size_t ambient) { return Subspace(ambient, Matrix(ambient, 0)); }

Subspace Subspace::full(std::size_t ambient) { return Subspace(ambient, Matrix::identity(ambient)); }

Subspace Subspace::span(std::size_t ambient, const std::vector<Vec> &vectors) {
  EchelonSpan e(ambient);
  std::vector<Vec> kept;
  for (const auto &v : vectors)
    if (e.add(v))
      kept.push_back(v);
  return Subspace(ambient, Matrix::from_columns(ambient, kept));
}

bool Subspace::contains(const Vec &v) const {
  EchelonSpan e(ambient_);
  for (std::size_t c = 0; c < dim(); ++c)
    e.add(basis_.column(c));
  return e.contains(v);
}

bool Subspace::contains(const Subspace &other) const {
  if (other.ambient_ != ambient_)
    throw ShapeError("subspace ambient mismatch");
  EchelonSpan e(ambient_);
  for (std::size_t c = 0; c < dim(); ++c)
    e.add(basis_.column(c));
  for (std::size_t c = 0; c < other.dim(); ++c)
    if (!e.contains(other.basis_.column(c)))
      return false;
  return true;
}

bool Subspace::operator==(const Subspace &other) const {
  return ambient_ == other.ambient_ && dim() == other.dim() && contains(other);
}

Vec Subspace::coordinates(const Vec &v) const {
  auto sol = solve_affine(basis_, v);
  if (!sol)
    throw Error("vector not in subspace");
  return sol->particular;
}

Subspace Subspace::canonical() const {
  Rref r = rref(basis_.transpose());
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < r.pivots.size(); ++i)
    rows.push_back(r.reduced.row(i));
  return Subspace(ambient_, Matrix::from_columns(ambient_, rows));
}

Subspace kernel(const Matrix &a) {
  Rref r = rref(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots)
    is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f])
      continue;
    Vec v(n);
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
      v[r.pivots[i]] = -r.reduced(i, f);
    // normalise: leading nonzero coordinate equal to one
    auto lead = std::find_if(v.begin(), v.end(), [](const Scalar &x) { return sgn(x) != 0; });
    Scalar inv = 1 / *lead;
    basis.push_back(inv * v);
  }
  return Subspace(n, Matrix::from_columns(n, basis));
}

Subspace image(const Matrix &a) {
  Rref r = rref(a);
  std::vector<Vec> cols;
  for (auto p : r.pivots)
    cols.push_back(a.column(p));
  return Subspace(a.rows(), Matrix::from_columns(a.rows(), cols));
}

Subspace sum(const Subspace &a, const Subspace &b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw ShapeError("subspace sum ambient mismatch");
  auto vs = a.vectors();
  auto wb = b.vectors();
  vs.insert(vs.end(), wb.begin(), wb.end());
  return Subspace::span(a.ambient_dim(), vs);
}

Subspace intersection(const Subspace &a, const Subspace &b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw ShapeError("subspace intersection ambient mismatch");
  // x = A u = B w  <=>  [A | -B] (u,w) = 0
  Matrix m = a.basis().hstack((-1) * b.basis());
  Subspace k = kernel(m);
  std::vector<Vec> vs;
  for (const auto &kv : k.vectors()) {
    Vec u(kv.begin(), kv.begin() + static_cast<std::ptrdiff_t>(a.dim()));
    vs.push_back(a.basis() * u);
  }
  return Subspace::span(a.ambient_dim(), vs);
}

std::optional<AffineSolution> solve_affine(const Matrix &a, const Vec &b) {
  if (b.size() != a.rows())
    throw ShapeError(fmt::format("solve_affine: {}x{} system with rhs of length {}", a.rows(),
                                 a.cols(), b.size()));
  Matrix aug = a.hstack(Matrix::from_columns(a.rows(), {b}));
  Rref r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == a.cols())
    return std::nullopt;
  Vec x(a.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i)
    x[r.pivots[i]] = r.reduced(i, a.cols());
  return AffineSolution{std::move(x), kernel(a)};
}

Subspace complement(const Subspace &u, const Subspace &v) {
  if (u.ambient_dim() != v.ambient_dim())
    throw ShapeError("complement: ambient mismatch");
  if (!v.contains(u))
    throw Error("complement: U is not contained in V");
  EchelonSpan e(u.ambient_dim());
  for (const auto &x : u.vectors())
    e.add(x);
  std::vector<Vec> chosen;
  for (const auto &w : v.canonical().vectors()) {
    if (e.dim() == v.dim())
      break;
    if (e.add(w))
      chosen.push_back(w);
  }
  return Subspace(u.ambient_dim(), Matrix::from_columns(u.ambient_dim(), chosen));
}

} // namespace dgla

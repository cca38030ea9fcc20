// Exact rational scalars and dense linear algebra.
//
// Everything downstream (cohomology, Hodge splittings, obstruction classes)
// is built on the routines here.  Pivoting is always lowest-index-first so
// that every derived choice is reproducible.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dgla {

using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
public:
  using Error::Error;
};

Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar &s);

// ---------------------------------------------------------------------------
// Vectors

Vec zeros(std::size_t n);
Vec unit_vector(std::size_t n, std::size_t i);
bool is_zero(const Vec &v);
void axpy(Vec &y, const Scalar &a, const Vec &x); // y += a*x
Vec operator+(const Vec &a, const Vec &b);
Vec operator-(const Vec &a, const Vec &b);
Vec operator-(const Vec &a);
Vec operator*(const Scalar &s, const Vec &v);

// ---------------------------------------------------------------------------
// Matrix

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, const std::vector<Vec> &cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar &operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Vec column(std::size_t c) const;
  Vec row(std::size_t r) const;
  void set_column(std::size_t c, const Vec &v);
  std::vector<Vec> columns() const;

  Matrix transpose() const;
  bool is_zero() const;

  Matrix operator*(const Matrix &other) const;
  Vec operator*(const Vec &v) const;
  Matrix operator+(const Matrix &other) const;
  Matrix operator-(const Matrix &other) const;
  friend Matrix operator*(const Scalar &s, const Matrix &m);

  bool operator==(const Matrix &other) const = default;

  // [this | other]
  Matrix hstack(const Matrix &other) const;
  // rows [r0, r1) of this matrix
  Matrix row_block(std::size_t r0, std::size_t r1) const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

// Kronecker product a ⊗ b.
Matrix kron(const Matrix &a, const Matrix &b);

// ---------------------------------------------------------------------------
// Elimination

struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

Rref rref(const Matrix &a);
std::size_t rank(const Matrix &a);
Matrix inverse(const Matrix &a);

/// Incrementally maintained row-echelon basis of a span.  Used for greedy
/// complements and membership tests.
class EchelonSpan {
public:
  explicit EchelonSpan(std::size_t ambient) : ambient_(ambient) {}
  /// Adds v; returns false when v already lies in the span.
  bool add(const Vec &v);
  bool contains(const Vec &v) const;
  std::size_t dim() const { return rows_.size(); }

private:
  Vec reduce(Vec v) const;

  std::size_t ambient_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

// ---------------------------------------------------------------------------
// Subspaces

/// A linear subspace of 𝕂^ambient_dim given by independent basis columns.
class Subspace {
public:
  Subspace() = default;
  Subspace(std::size_t ambient, Matrix basis); // columns must be independent

  static Subspace zero(std::size_t ambient);
  static Subspace full(std::size_t ambient);
  /// Span of arbitrary vectors; dependent ones are dropped in order.
  static Subspace span(std::size_t ambient, const std::vector<Vec> &vectors);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix &basis() const { return basis_; }
  Vec vector(std::size_t i) const { return basis_.column(i); }
  std::vector<Vec> vectors() const { return basis_.columns(); }

  bool contains(const Vec &v) const;
  bool contains(const Subspace &other) const;
  bool operator==(const Subspace &other) const; // as subspaces

  /// Coordinates of v in this basis; throws if v is not in the span.
  Vec coordinates(const Vec &v) const;

  /// Reduced echelon basis (pivot coordinates form an identity block),
  /// ordered by pivot index.  For the full space this is the standard basis.
  Subspace canonical() const;

private:
  std::size_t ambient_ = 0;
  Matrix basis_;
};

Subspace kernel(const Matrix &a);
Subspace image(const Matrix &a);
Subspace sum(const Subspace &a, const Subspace &b);
Subspace intersection(const Subspace &a, const Subspace &b);

struct AffineSolution {
  Vec particular;
  Subspace nullspace;
};

/// Solves A x = b.  Empty when b is not in the image of A.
std::optional<AffineSolution> solve_affine(const Matrix &a, const Vec &b);

/// Deterministic complement of U inside V, chosen greedily over the
/// canonical basis of V (the standard basis when V is the whole space).
Subspace complement(const Subspace &u, const Subspace &v);

} // namespace dgla

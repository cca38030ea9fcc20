// Local Artinian 𝕂-algebras with residue field 𝕂, described by their
// maximal ideal: a labeled basis of m_A and commutative structure constants.
#pragma once

#include "dgla/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace dgla {

class ArtinAlgebra {
public:
  /// table[(i*n + j)*n + k] = coefficient of e_k in e_i e_j.  Validates
  /// commutativity, associativity and nilpotency.
  ArtinAlgebra(std::vector<std::string> labels, std::vector<Scalar> table, std::string name = {});

  static ArtinAlgebra residue_field();

  const std::string &name() const { return name_; }
  std::size_t dim_m() const { return labels_.size(); }
  std::size_t dim() const { return labels_.size() + 1; }
  const std::vector<std::string> &labels() const { return labels_; }
  std::size_t index_of(const std::string &label) const;

  const Scalar &coeff(std::size_t i, std::size_t j, std::size_t k) const {
    return table_[(i * dim_m() + j) * dim_m() + k];
  }
  const std::vector<Scalar> &table() const { return table_; }
  /// Nonzero terms (k, coefficient) of e_i e_j at index i*dim_m + j.
  const std::vector<std::vector<std::pair<std::size_t, Scalar>>> &sparse_products() const { return sparse_; }
  /// Product of two elements of m, in m-coordinates.
  Vec mul(const Vec &a, const Vec &b) const;
  /// Matrix of multiplication by a on m.
  Matrix mul_matrix(const Vec &a) const;

  /// Least n with m^n = 0 (1 for the residue field).
  int nilpotency_index() const { return static_cast<int>(filtration_.size()); }
  /// m^1 ⊋ m^2 ⊋ ... ⊋ m^n = 0.
  const std::vector<Subspace> &filtration() const { return filtration_; }
  /// m^k for k ≥ 1 (zero past the nilpotency index).
  Subspace power(int k) const;
  /// Annihilator of m.
  Subspace socle() const;

private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<Scalar> table_;
  std::vector<Subspace> filtration_;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> sparse_;
};

using ArtinPtr = std::shared_ptr<const ArtinAlgebra>;

/// Exponent vectors; a relation is a monomial generating the ideal.
using Monomial = std::vector<int>;

/// 𝕂[vars]/(relations) for a cofinite monomial ideal.  The m-basis is the
/// set of standard monomials ordered by total degree, then lexicographically
/// with the first variable largest.
ArtinPtr build_truncated_poly(const std::vector<std::string> &vars, const std::vector<Monomial> &relations);
/// Same, with relations written as "t^3", "x*y", "xy" or "x^2y".
ArtinPtr build_truncated_poly(const std::vector<std::string> &vars, const std::vector<std::string> &relations);
Monomial parse_monomial(const std::string &text, const std::vector<std::string> &vars);
std::string monomial_label(const Monomial &m, const std::vector<std::string> &vars);

/// A local morphism, given by its matrix on m-bases.
struct AlgebraMorphism {
  ArtinPtr source;
  ArtinPtr target;
  Matrix matrix; // target.dim_m x source.dim_m

  Vec apply(const Vec &v) const { return matrix * v; }
};

/// Throws Error when the matrix has the wrong shape or is not multiplicative.
void validate_morphism(const AlgebraMorphism &f);
AlgebraMorphism identity_morphism(const ArtinPtr &a);
/// The augmentation A -> 𝕂.
AlgebraMorphism augmentation(const ArtinPtr &a);
AlgebraMorphism compose(const AlgebraMorphism &g, const AlgebraMorphism &f); // g ∘ f
bool is_surjective(const AlgebraMorphism &f);
bool is_isomorphism(const AlgebraMorphism &f);

/// A quotient B -> B/I with a linear section whose image is spanned by
/// standard basis vectors of m_B.
struct QuotientMap {
  ArtinPtr total;
  ArtinPtr quotient;
  AlgebraMorphism projection;
  Matrix section; // total.dim_m x quotient.dim_m
  Subspace ideal; // in m_B coordinates
};

/// Throws Error when `ideal` is not an ideal of B contained in m_B.
QuotientMap quotient(const ArtinPtr &b, const Subspace &ideal);

/// A quotient whose kernel M satisfies m_B · M = 0.
struct SmallExtension : QuotientMap {};

SmallExtension small_extension(const ArtinPtr &b, const Subspace &ideal);

/// Chain A = A_n -> A_{n-1} -> ... -> 𝕂 of small extensions with
/// one-dimensional kernels refining the m-adic filtration.  Element 0 is
/// the top step out of A.
std::vector<SmallExtension> small_extension_tower(const ArtinPtr &a);

struct FibredProduct {
  ArtinPtr product;
  AlgebraMorphism to_b;
  AlgebraMorphism to_c;
  AlgebraMorphism f; // B -> A
  AlgebraMorphism g; // C -> A
};

/// B ×_A C for f: B -> A, g: C -> A, realized inside m_B ⊕ m_C.
FibredProduct fibred_product(const AlgebraMorphism &f, const AlgebraMorphism &g);

/// The unique h: D -> B ×_A C with to_b∘h = p and to_c∘h = q.  Throws when
/// the cone does not commute.
AlgebraMorphism mediating_morphism(const FibredProduct &fp, const AlgebraMorphism &p, const AlgebraMorphism &q);

} // namespace dgla

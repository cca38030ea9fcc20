// Builders for the concrete DGLA families: the matrix complex of a complex
// structure, Hochschild cochains, polyvector fields, the L_d extension,
// positive truncations and the cohomology DGLA.
#pragma once

#include "dgla/artin.hpp"
#include "dgla/dgla.hpp"

namespace dgla {

/// Finite-dimensional unital associative algebra.
struct AssocAlgebra {
  std::vector<std::string> labels;
  std::vector<Scalar> table; // (p*n + q)*n + r
  std::size_t dim() const { return labels.size(); }
  const Scalar &coeff(std::size_t p, std::size_t q, std::size_t r) const {
    return table[(p * dim() + q) * dim() + r];
  }
};

/// Throws Error on a non-associative table or a missing unit.
void validate_assoc(const AssocAlgebra &a);
/// 𝕂 ⊕ m_A with basis {1, m-basis}.
AssocAlgebra unitalization(const ArtinAlgebra &a);

/// L^n = End(𝕂^dim) for n = 1..4 (open at the top), d(A) = JA + AJ out of
/// odd degrees and JA - AJ out of even ones, [A,B] = AB - (-1)^{ij} BA.
/// J is block diagonal with blocks [[0,1],[-1,0]].
DglaPtr build_example_J(std::size_t dim, std::string name = {});
Matrix standard_J(std::size_t dim);

/// Hochschild cochains G^p = Hom(A^{⊗(p+1)}, A) in degrees 0..max_degree
/// with the Gerstenhaber bracket and d = [μ, -].  Basis of G^p: pairs
/// (input word, output index), index word_rank * dim(A) + output.
DglaPtr build_hochschild_window(const AssocAlgebra &a, int max_degree, std::string name = {});
/// The multiplication cochain μ ∈ G^1.
Vec hochschild_multiplication(const AssocAlgebra &a);
/// Coordinates of a linear map A -> A (matrix, output x input) in G^0.
Vec hochschild_cochain0(const Matrix &phi);

/// Polyvector fields on 𝕂[x_1..x_n]/(degree > D): L^{-1} = functions,
/// L^k = Λ^{k+1} Der, Schouten bracket, zero differential.  Pairs whose
/// bracket has a coefficient of degree > D are marked undefined.
DglaPtr build_polyvector(int num_vars, int truncation_order, std::string name = {});

/// L_d: L^1 gains a basis vector "d" with [d, b] = db and d_d(a + v d) = da.
/// Requires degree 1 in the window.
DglaPtr extend_with_d(const Dgla &l);
/// Index of the added vector d in L_d^1.
std::size_t extension_index(const Dgla &ld);
/// Embeds a ∈ L^1 as a + d ∈ L_d^1.
Vec embed_with_d(const Dgla &l, const Vec &a);

/// Inclusion N -> L with N^i = 0 for i ≤ 0, N^1 = `complement_of_b1`,
/// N^i = L^i for i ≥ 2.  Throws unless N^1 ⊕ B^1 = L^1.
DglaMorphism truncate_positive(const DglaPtr &l, const Subspace &complement_of_b1);
/// Same, with the deterministic complement of B^1.
DglaMorphism truncate_positive(const DglaPtr &l);

/// H*(L) with zero differential and the bracket induced on the chosen
/// representatives.
struct CohomologyDgla {
  DglaPtr dgla;
  CohomologyData data;
};
CohomologyDgla cohomology_dgla(const Dgla &l);

} // namespace dgla

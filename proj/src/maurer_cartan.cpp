#include "dgla/maurer_cartan.hpp"

#include <fmt/format.h>

namespace dgla {

TensorElement mc_residual(const TensorElement &x) {
  if (x.degree != 1)
    throw Error(fmt::format("mc_residual: element has degree {}, expected 1", x.degree));
  return differential(x) + Scalar(1, 2) * bracket(x, x);
}

bool mc_check(const TensorElement &x) { return mc_residual(x).is_zero(); }

namespace {

// d : L^1 -> L^2, with the empty matrix when L^1 lies outside the window.
Matrix d_one(const Dgla &l) {
  if (!l.space().in_window(1))
    return Matrix(l.dim(2), 0);
  return l.d_block(1);
}

} // namespace

Subspace mc_tangent(const Dgla &l) { return kernel(d_one(l)); }

namespace {

bool same_ring(const ArtinAlgebra &a, const ArtinAlgebra &b) {
  return a.dim_m() == b.dim_m() && a.table() == b.table();
}

// H^2 class coordinates of a cocycle of L^2 (empty when L^2 = 0)
Vec h2_class(const Dgla &l, const Vec &z) {
  if (l.dim(2) == 0)
    return {};
  return cohomology(l).class_of(2, z);
}

std::size_t h2_dim(const Dgla &l) {
  if (l.dim(2) == 0)
    return 0;
  const auto &h = cohomology(l);
  if (!h.has(2))
    throw WindowError("H^2 is not computable on this window");
  return h.dim_h(2);
}

// Coefficients of e_k ⊗ (m-basis) for fixed k.
Vec m_row(const TensorElement &x, std::size_t k) {
  const std::size_t n = x.dim_m();
  return Vec(x.coeffs.begin() + k * n, x.coeffs.begin() + (k + 1) * n);
}

// h ∈ L^deg ⊗ M as a (dim L) x (dim M) matrix in ideal coordinates.
Matrix ideal_coordinates(const TensorElement &h, const Subspace &ideal) {
  Matrix out(h.dim_l(), ideal.dim());
  for (std::size_t k = 0; k < h.dim_l(); ++k) {
    Vec c = ideal.coordinates(m_row(h, k));
    for (std::size_t j = 0; j < c.size(); ++j)
      out(k, j) = c[j];
  }
  return out;
}

} // namespace

TensorElement section_lift(const TensorElement &x, const SmallExtension &e) {
  if (!same_ring(*x.a, *e.quotient))
    throw Error("section_lift: element does not live over the quotient of the extension");
  return {x.l, e.total, x.degree, tensor_apply(x.dim_l(), e.section, x.coeffs)};
}

ObstructionClass obstruction_of_given_lift(const TensorElement &lift, const SmallExtension &e) {
  if (!same_ring(*lift.a, *e.total))
    throw Error("obstruction: lift does not live over the total ring of the extension");
  const Dgla &l = *lift.l;
  TensorElement h = mc_residual(lift);
  if (!base_change(h, e.projection).is_zero())
    throw Error("obstruction: lift does not reduce to a Maurer-Cartan element");
  if (!differential(h).is_zero())
    throw Error("obstruction: dh is not zero");
  const std::size_t r = e.ideal.dim();
  ObstructionClass out{Matrix(h2_dim(l), r), ideal_coordinates(h, e.ideal)};
  if (out.coords.rows() > 0)
    for (std::size_t c = 0; c < r; ++c)
      out.coords.set_column(c, h2_class(l, out.cocycle.column(c)));
  return out;
}

ObstructionClass obstruction_of_lift(const TensorElement &x, const SmallExtension &e) {
  if (!mc_check(x))
    throw Error("obstruction_of_lift: element is not Maurer-Cartan");
  return obstruction_of_given_lift(section_lift(x, e), e);
}

std::optional<LiftFamily> lift_family(const TensorElement &x, const SmallExtension &e) {
  if (!mc_check(x))
    throw Error("lift_through_extension: element is not Maurer-Cartan");
  TensorElement lift = section_lift(x, e);
  const Dgla &l = *x.l;
  Matrix h = ideal_coordinates(mc_residual(lift), e.ideal);
  const std::size_t r = e.ideal.dim();
  const Matrix d = d_one(l);
  TensorElement particular = lift;
  for (std::size_t c = 0; c < r; ++c) {
    auto sol = solve_affine(d, -h.column(c));
    if (!sol)
      return std::nullopt;
    particular = particular + TensorElement::pure(x.l, e.total, 1, sol->particular, e.ideal.vector(c));
  }
  if (!mc_check(particular))
    throw Error("lift_through_extension: solved lift is not Maurer-Cartan");
  LiftFamily fam{particular, {}};
  for (const auto &z : mc_tangent(l).vectors())
    for (std::size_t c = 0; c < r; ++c)
      fam.directions.push_back(tensor_vec(z, e.ideal.vector(c)));
  return fam;
}

std::optional<TensorElement> lift_through_extension(const TensorElement &x, const SmallExtension &e) {
  auto fam = lift_family(x, e);
  if (!fam)
    return std::nullopt;
  return fam->particular;
}

Vec primary_obstruction(const Dgla &l, const Vec &xi) {
  if (!is_zero(l.d(1, xi)))
    throw Error("primary_obstruction: element is not a cocycle");
  if (l.dim(2) == 0)
    return {};
  return h2_class(l, Scalar(1, 2) * l.bracket(1, xi, 1, xi));
}

SmoothnessReport smoothness_diagnostics(const Dgla &l) {
  SmoothnessReport rep;
  const std::size_t d1 = l.dim(1), d2 = l.dim(2);
  Subspace b2 = Subspace::zero(d2);
  if (d2 > 0) {
    const auto &h = cohomology(l);
    if (h.has(2)) {
      b2 = h.at(2).b;
      rep.H2_zero = h.dim_h(2) == 0;
    } else {
      b2 = image(d_one(l));
    }
  } else {
    rep.H2_zero = true;
  }
  auto pairs_in = [&](const std::vector<Vec> &basis, const Subspace &target) {
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = a; b < basis.size(); ++b)
        if (!target.contains(l.bracket(1, basis[a], 1, basis[b])))
          return false;
    return true;
  };
  std::vector<Vec> l1;
  for (std::size_t k = 0; k < d1; ++k)
    l1.push_back(unit_vector(d1, k));
  const auto z1 = mc_tangent(l).vectors();
  rep.bracket_L1_in_B2 = pairs_in(l1, b2);
  rep.bracket_Z1_in_B2 = pairs_in(z1, b2);
  rep.bracket_Z1_zero = pairs_in(z1, Subspace::zero(d2));
  return rep;
}

} // namespace dgla

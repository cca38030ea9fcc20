#include "dgla/gauge.hpp"

#include <fmt/format.h>

namespace dgla {

namespace {

void require_degree(const TensorElement &x, int deg, const char *what) {
  if (x.degree != deg)
    throw Error(fmt::format("{}: expected an element of degree {}, got {}", what, deg, x.degree));
}

void require_same(const TensorElement &a, const TensorElement &x, const char *what) {
  if (a.l != x.l)
    throw Error(fmt::format("{}: elements belong to different DGLAs", what));
  if (a.a != x.a && a.a->table() != x.a->table())
    throw Error(fmt::format("{}: elements live over different rings", what));
}

bool same_ring(const ArtinAlgebra &a, const ArtinAlgebra &b) {
  return a.dim_m() == b.dim_m() && a.table() == b.table();
}

Matrix ideal_coordinates(const TensorElement &h, const Subspace &ideal) {
  const std::size_t n = h.dim_m();
  Matrix out(h.dim_l(), ideal.dim());
  for (std::size_t k = 0; k < h.dim_l(); ++k) {
    Vec row(h.coeffs.begin() + static_cast<long>(k * n), h.coeffs.begin() + static_cast<long>((k + 1) * n));
    Vec c = ideal.coordinates(row);
    for (std::size_t j = 0; j < c.size(); ++j)
      out(k, j) = c[j];
  }
  return out;
}

// d : L^0 -> L^1 (empty when L^0 is outside the window)
Matrix d_zero(const Dgla &l) {
  if (!l.space().in_window(0))
    return Matrix(l.dim(1), 0);
  return l.d_block(0);
}

} // namespace

TensorElement exp_action(const TensorElement &a, const TensorElement &x) {
  require_degree(a, 0, "exp_action");
  require_degree(x, 1, "exp_action");
  require_same(a, x, "exp_action");
  if (a.is_zero())
    return x;
  TensorElement term = bracket(a, x) - differential(a);
  TensorElement out = x + term;
  const int n_max = a.a->nilpotency_index();
  for (int n = 1; n <= n_max && !term.is_zero(); ++n) {
    term = Scalar(1, n + 1) * bracket(a, term);
    out = out + term;
  }
  return out;
}

Subspace tangent_action_image(const DglaPtr &l) {
  auto eps = build_truncated_poly({"e"}, std::vector<std::string>{"e^2"});
  std::vector<Vec> images;
  const std::size_t d0 = l->dim(0);
  for (std::size_t k = 0; k < d0; ++k) {
    auto b = TensorElement::pure(l, eps, 0, unit_vector(d0, k), {1});
    images.push_back(exp_action(b, TensorElement::zero(l, eps, 1)).coeffs);
  }
  return Subspace::span(l->dim(1), images);
}

const DegreeCohomology &def_tangent(const Dgla &l) {
  const auto &h = cohomology(l);
  if (!h.has(1))
    throw WindowError("H^1 is not computable on this window");
  return h.at(1);
}

IsoObstruction iso_obstruction(const TensorElement &g, const TensorElement &x_lift, const TensorElement &y_lift,
                               const SmallExtension &e, const std::optional<TensorElement> &g_lift) {
  require_degree(g, 0, "iso_obstruction");
  if (!same_ring(*g.a, *e.quotient) || !same_ring(*x_lift.a, *e.total) || !same_ring(*y_lift.a, *e.total))
    throw Error("iso_obstruction: elements do not match the extension");
  if (!mc_check(x_lift) || !mc_check(y_lift))
    throw Error("iso_obstruction: lifts must be Maurer-Cartan");
  TensorElement x = base_change(x_lift, e.projection), y = base_change(y_lift, e.projection);
  if (!(exp_action(g, TensorElement{x.l, g.a, 1, x.coeffs}).coeffs == y.coeffs))
    throw Error("iso_obstruction: g does not carry x to y");
  TensorElement gl = g_lift ? *g_lift : TensorElement{g.l, e.total, 0, tensor_apply(g.dim_l(), e.section, g.coeffs)};
  if (!same_ring(*gl.a, *e.total) || !(base_change(gl, e.projection).coeffs == g.coeffs))
    throw Error("iso_obstruction: g_lift does not lift g");
  TensorElement w = exp_action(TensorElement{gl.l, x_lift.a, 0, gl.coeffs}, x_lift) - y_lift;
  const Dgla &l = *g.l;
  IsoObstruction out;
  out.cocycle = ideal_coordinates(w, e.ideal);
  const auto &h1 = def_tangent(l);
  out.coords = Matrix(h1.dim_h(), e.ideal.dim());
  for (std::size_t c = 0; c < e.ideal.dim(); ++c) {
    Vec z = out.cocycle.column(c);
    out.coords.set_column(c, cohomology(l).class_of(1, z));
  }
  return out;
}

std::optional<TensorElement> iso_lift(const TensorElement &g, const TensorElement &x_lift, const TensorElement &y_lift,
                                      const SmallExtension &e) {
  IsoObstruction ob = iso_obstruction(g, x_lift, y_lift, e);
  if (!ob.is_zero())
    return std::nullopt;
  // e^{g'+c} * x' = e^{g'} * x' - dc for c ∈ L^0 ⊗ M: solve dc = w
  const Dgla &l = *g.l;
  const Matrix d = d_zero(l);
  TensorElement out{g.l, x_lift.a, 0, tensor_apply(g.dim_l(), e.section, g.coeffs)};
  for (std::size_t c = 0; c < e.ideal.dim(); ++c) {
    auto sol = solve_affine(d, ob.cocycle.column(c));
    if (!sol)
      throw Error("iso_lift: exact cocycle has no preimage");
    out = out + TensorElement::pure(g.l, x_lift.a, 0, sol->particular, e.ideal.vector(c));
  }
  if (!(exp_action(out, x_lift) == y_lift))
    throw Error("iso_lift: corrected gauge does not intertwine the lifts");
  return out;
}

Subspace irrelevant_subalgebra(const TensorElement &a) {
  require_degree(a, 1, "irrelevant_subalgebra");
  const Dgla &l = *a.l;
  const std::size_t target = l.dim(0) * a.dim_m();
  if (l.dim(-1) == 0)
    return Subspace::zero(target);
  std::vector<Vec> images;
  for (std::size_t k = 0; k < l.dim(-1); ++k)
    for (std::size_t p = 0; p < a.dim_m(); ++p) {
      auto b = TensorElement::pure(a.l, a.a, -1, unit_vector(l.dim(-1), k), unit_vector(a.dim_m(), p));
      images.push_back((bracket(a, b) + differential(b)).coeffs);
    }
  return Subspace::span(target, images);
}

std::string to_string(MorphismVerdict v) {
  switch (v) {
  case MorphismVerdict::Etale:
    return "etale";
  case MorphismVerdict::Isomorphism:
    return "isomorphism";
  case MorphismVerdict::Inconclusive:
    break;
  }
  return "inconclusive";
}

MorphismReport morphism_report(const DglaMorphism &f) {
  auto check = validate_morphism(f);
  if (!check.passed())
    throw Error("morphism_report: not a DGLA morphism (" + check.violations.front().identity + ")");
  auto maps = induced_cohomology_maps(f);
  MorphismReport rep;
  for (int i = 0; i <= 2; ++i) {
    auto it = maps.find(i);
    if (it != maps.end())
      rep.maps.emplace(i, it->second);
    else if (f.source->dim(i) == 0 && f.target->dim(i) == 0)
      rep.maps.emplace(i, Matrix(0, 0));
    else
      throw WindowError(fmt::format("H^{} is not computable for this morphism", i));
    const Matrix &m = rep.maps.at(i);
    rep.ranks.emplace(i, rank(m));
  }
  const Matrix &m0 = rep.maps.at(0), &m1 = rep.maps.at(1), &m2 = rep.maps.at(2);
  rep.h0_surjective = rep.ranks.at(0) == m0.rows();
  rep.h1_bijective = m1.rows() == m1.cols() && rep.ranks.at(1) == m1.rows();
  rep.h2_injective = rep.ranks.at(2) == m2.cols();
  if (rep.h1_bijective && rep.h2_injective)
    rep.verdict = rep.h0_surjective ? MorphismVerdict::Isomorphism : MorphismVerdict::Etale;
  return rep;
}

} // namespace dgla

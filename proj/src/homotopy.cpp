#include "dgla/homotopy.hpp"

#include "dgla/bch.hpp"

#include <fmt/format.h>

namespace dgla {

namespace {

bool same_ring(const ArtinAlgebra &x, const ArtinAlgebra &y) { return x.table() == y.table(); }

void check_compatible(const PolyPath &x, const PolyPath &y, const char *what) {
  if (x.l != y.l || !same_ring(*x.a, *y.a))
    throw Error(fmt::format("{}: paths over different DGLAs or rings", what));
}

PolyPath padded(const PolyPath &p, int cap) {
  PolyPath out = p;
  out.cap = cap;
  out.coeffs.resize(static_cast<std::size_t>(cap) + 1, zeros(p.l->dim(p.degree) * p.a->dim_m()));
  return out;
}

} // namespace

PolyPath PolyPath::zero(const DglaPtr &l, const ArtinPtr &a, int degree, int cap) {
  if (cap < 0)
    throw Error("PolyPath: negative cap");
  return {l, a, degree, cap,
          std::vector<Vec>(static_cast<std::size_t>(cap) + 1, zeros(l->dim(degree) * a->dim_m()))};
}

PolyPath PolyPath::constant(const TensorElement &x, int cap) { return monomial(x, 0, cap); }

PolyPath PolyPath::monomial(const TensorElement &x, int power, int cap) {
  if (power > cap && !x.is_zero())
    throw PathCapError(fmt::format("t^{} exceeds the cap {}", power, cap));
  PolyPath out = zero(x.l, x.a, x.degree, cap);
  if (power <= cap)
    out.coeffs[static_cast<std::size_t>(power)] = x.coeffs;
  return out;
}

int PolyPath::t_degree() const {
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
    if (!is_zero(coeffs[static_cast<std::size_t>(k)]))
      return k;
  return -1;
}

TensorElement PolyPath::coefficient(int k) const {
  if (k < 0 || k > cap)
    return TensorElement::zero(l, a, degree);
  return {l, a, degree, coeffs[static_cast<std::size_t>(k)]};
}

TensorElement PolyPath::at(const Scalar &s) const {
  // Horner
  Vec out = zeros(l->dim(degree) * a->dim_m());
  for (int k = cap; k >= 0; --k) {
    for (auto &c : out)
      c *= s;
    axpy(out, 1, coeffs[static_cast<std::size_t>(k)]);
  }
  return {l, a, degree, out};
}

PolyPath PolyPath::derivative() const {
  PolyPath out = zero(l, a, degree, cap);
  for (int k = 1; k <= cap; ++k)
    axpy(out.coeffs[static_cast<std::size_t>(k - 1)], k, coeffs[static_cast<std::size_t>(k)]);
  return out;
}

PolyPath PolyPath::integral_from(const Scalar &s) const {
  if (t_degree() >= cap)
    throw PathCapError(fmt::format("integration raises the t-degree above the cap {}", cap));
  PolyPath out = zero(l, a, degree, cap);
  for (int k = 0; k < cap; ++k)
    axpy(out.coeffs[static_cast<std::size_t>(k + 1)], Scalar(1, k + 1), coeffs[static_cast<std::size_t>(k)]);
  // subtract the value at s
  TensorElement at_s = out.at(s);
  axpy(out.coeffs[0], -1, at_s.coeffs);
  return out;
}

PolyPath PolyPath::with_cap(int new_cap) const {
  if (t_degree() > new_cap)
    throw PathCapError(fmt::format("path of t-degree {} does not fit the cap {}", t_degree(), new_cap));
  PolyPath out = *this;
  out.cap = new_cap;
  out.coeffs.resize(static_cast<std::size_t>(new_cap) + 1, zeros(l->dim(degree) * a->dim_m()));
  return out;
}

PolyPath PolyPath::operator+(const PolyPath &o) const {
  check_compatible(*this, o, "path sum");
  if (degree != o.degree)
    throw Error("path sum: degree mismatch");
  const int c = std::max(cap, o.cap);
  PolyPath out = padded(*this, c), other = padded(o, c);
  for (std::size_t k = 0; k < out.coeffs.size(); ++k)
    axpy(out.coeffs[k], 1, other.coeffs[k]);
  return out;
}

PolyPath PolyPath::operator-(const PolyPath &o) const { return *this + (-o); }
PolyPath PolyPath::operator-() const { return Scalar(-1) * *this; }

PolyPath operator*(const Scalar &s, const PolyPath &p) {
  PolyPath out = p;
  for (auto &v : out.coeffs)
    for (auto &c : v)
      c *= s;
  return out;
}

bool PolyPath::operator==(const PolyPath &o) const {
  if (degree != o.degree)
    return false;
  const int c = std::max(cap, o.cap);
  return padded(*this, c).coeffs == padded(o, c).coeffs;
}

PolyPath path_bracket(const PolyPath &x, const PolyPath &y) {
  check_compatible(x, y, "path bracket");
  const int cap = std::max(x.cap, y.cap);
  PolyPath out = PolyPath::zero(x.l, x.a, x.degree + y.degree, cap);
  const int dx = x.t_degree(), dy = y.t_degree();
  for (int i = 0; i <= dx; ++i) {
    const Vec &xi = x.coeffs[static_cast<std::size_t>(i)];
    if (is_zero(xi))
      continue;
    for (int j = 0; j <= dy; ++j) {
      const Vec &yj = y.coeffs[static_cast<std::size_t>(j)];
      if (is_zero(yj))
        continue;
      Vec br = tensor_bracket(*x.l, *x.a, x.degree, xi, y.degree, yj);
      if (is_zero(br))
        continue;
      if (i + j > cap)
        throw PathCapError(fmt::format("bracket reaches t^{} above the cap {}", i + j, cap));
      axpy(out.coeffs[static_cast<std::size_t>(i + j)], 1, br);
    }
  }
  return out;
}

PolyPath path_d(const PolyPath &x) {
  PolyPath out = PolyPath::zero(x.l, x.a, x.degree + 1, x.cap);
  for (int k = 0; k <= x.t_degree(); ++k)
    out.coeffs[static_cast<std::size_t>(k)] = tensor_d(*x.l, *x.a, x.degree, x.coeffs[static_cast<std::size_t>(k)]);
  return out;
}

OmegaElement omega_differential(const OmegaElement &w) {
  if (w.b.degree != w.a.degree - 1)
    throw Error("omega element: dt-component must have degree one less");
  const Scalar sign = sign_of(w.a.degree);
  return {path_d(w.a), sign * w.a.derivative() + path_d(w.b)};
}

OmegaElement omega_bracket(const OmegaElement &x, const OmegaElement &y) {
  const Scalar sign = sign_of(y.degree());
  return {path_bracket(x.a, y.a), path_bracket(x.a, y.b) + sign * path_bracket(x.b, y.a)};
}

OmegaMcReport mc_omega_check(const OmegaElement &w) {
  if (w.degree() != 1 || w.b.degree != 0)
    throw Error("mc_omega_check: expects an element of Ω^1");
  OmegaMcReport r;
  PolyPath res = path_d(w.a) + Scalar(1, 2) * path_bracket(w.a, w.a);
  r.pointwise_mc = res.t_degree() < 0;
  PolyPath flow = w.a.derivative() - path_d(w.b) - path_bracket(w.a, w.b);
  r.flow = flow.t_degree() < 0;
  return r;
}

TensorElement evaluate(const OmegaElement &w, const Scalar &s) { return w.a.at(s); }

OmegaElement lift_omega(const OmegaElement &w, const SmallExtension &e, const TensorElement &anchor, const Scalar &s) {
  if (!same_ring(*w.a.a, *e.quotient))
    throw Error("lift_omega: path does not live over the quotient of the extension");
  if (!same_ring(*anchor.a, *e.total) || anchor.l != w.a.l || anchor.degree != 1)
    throw Error("lift_omega: anchor must be a degree-1 element over the total ring");
  if (!mc_omega_check(w).ok())
    throw Error("lift_omega: path is not Maurer-Cartan in Ω");
  if (!mc_check(anchor))
    throw Error("lift_omega: anchor is not Maurer-Cartan");
  const TensorElement ws = evaluate(w, s);
  if (!(tensor_apply(anchor.dim_l(), e.projection.matrix, anchor.coeffs) == ws.coeffs))
    throw Error("lift_omega: anchor does not lift v_s of the path");
  auto lift_path = [&](const PolyPath &p) {
    PolyPath out = PolyPath::zero(p.l, e.total, p.degree, p.cap);
    for (int k = 0; k <= p.cap; ++k)
      out.coeffs[static_cast<std::size_t>(k)] =
          tensor_apply(p.l->dim(p.degree), e.section, p.coeffs[static_cast<std::size_t>(k)]);
    return out;
  };
  PolyPath at = lift_path(w.a), bt = lift_path(w.b);
  // move ã so that ã(s) = anchor; the shift lies in L^1 ⊗ J
  at = at + PolyPath::constant(anchor - at.at(s), at.cap);
  PolyPath gamma = path_d(bt) + path_bracket(at, bt) - at.derivative();
  if (gamma.t_degree() >= gamma.cap)
    gamma = gamma.with_cap(gamma.cap + 1);
  PolyPath aa = at + gamma.integral_from(s);
  OmegaElement out{aa, bt.with_cap(aa.cap)};
  if (!mc_omega_check(out).ok() || !(evaluate(out, s) == anchor))
    throw Error("lift_omega: lifted path failed verification");
  return out;
}

namespace {

// u0 + h u1 in N[t][h]/(h^2)
struct HPair {
  PolyPath u0, u1;
  HPair operator+(const HPair &o) const { return {u0 + o.u0, u1 + o.u1}; }
  friend HPair operator*(const Scalar &s, const HPair &p) { return {s * p.u0, s * p.u1}; }
};

} // namespace

PolyPath bch_gamma(const PolyPath &p) {
  if (p.degree != 0)
    throw Error("bch_gamma: expects a degree-0 path");
  const PolyPath dp = p.derivative();
  const int max_len = p.a->nilpotency_index() - 1;
  if (max_len < 2)
    return PolyPath::zero(p.l, p.a, 0, p.cap);
  HPair x{p, dp}, y{-p, PolyPath::zero(p.l, p.a, 0, p.cap)};
  HPair prod = bch_series(x, y, max_len, [](const HPair &u, const HPair &v) {
    return HPair{path_bracket(u.u0, v.u0), path_bracket(u.u0, v.u1) + path_bracket(u.u1, v.u0)};
  });
  if (prod.u0.t_degree() >= 0)
    throw Error("bch_gamma: h^0 part of e^{p}e^{-p} is not zero");
  return prod.u1 - dp;
}

int default_path_cap(const ArtinAlgebra &a, int input_degree) {
  const int n = std::max(a.nilpotency_index() - 1, 1);
  return n * (std::max(input_degree, 0) + 1) + 1;
}

PolyPath solve_gauge_ode(const PolyPath &b, const std::optional<PolyPath> &start) {
  if (b.degree != 0)
    throw Error("solve_gauge_ode: expects a degree-0 path");
  PolyPath p = start ? *start : PolyPath::zero(b.l, b.a, 0, b.cap);
  check_compatible(p, b, "solve_gauge_ode");
  if (!p.coefficient(0).is_zero())
    throw Error("solve_gauge_ode: the starting path must vanish at t = 0");
  p = p.with_cap(std::max(p.cap, b.cap));
  // each pass fixes one more power of m_A
  const int passes = b.a->nilpotency_index() + 1;
  for (int pass = 0; pass < passes; ++pass) {
    PolyPath chi = b - p.derivative() - bch_gamma(p);
    if (chi.t_degree() < 0)
      return p;
    p = p + chi.integral_from(0);
  }
  PolyPath chi = b - p.derivative() - bch_gamma(p);
  if (chi.t_degree() >= 0)
    throw Error("solve_gauge_ode: iteration did not converge");
  return p;
}

OmegaElement homotopy_from_gauge(const TensorElement &g, const TensorElement &x, const TensorElement &y) {
  if (g.degree != 0 || x.degree != 1 || y.degree != 1)
    throw Error("homotopy_from_gauge: expects g of degree 0 and x, y of degree 1");
  if (!(exp_action(g, x) == y))
    throw Error("homotopy_from_gauge: e^g * x != y");
  const int cap = default_path_cap(*x.a, 0);
  // e^{tg} * x = x + Σ_n t^{n+1} (ad g)^n([g,x] - dg) / (n+1)!
  PolyPath a = PolyPath::constant(x, cap);
  TensorElement term = bracket(g, x) - differential(g);
  Scalar fact = 1;
  for (int n = 0; !term.is_zero(); ++n) {
    fact *= n + 1;
    a = a + PolyPath::monomial((Scalar(1) / fact) * term, n + 1, cap);
    term = bracket(g, term);
  }
  OmegaElement w{a, PolyPath::constant(-g, cap)};
  if (!mc_omega_check(w).ok() || !(evaluate(w, 0) == x) || !(evaluate(w, 1) == y))
    throw Error("homotopy_from_gauge: constructed path failed verification");
  return w;
}

TensorElement gauge_from_homotopy(const OmegaElement &w) {
  if (!mc_omega_check(w).ok())
    throw Error("gauge_from_homotopy: path is not Maurer-Cartan in Ω");
  PolyPath b = w.b.with_cap(std::max(w.b.cap, default_path_cap(*w.b.a, std::max(w.b.t_degree(), 0))));
  PolyPath p = solve_gauge_ode(-b);
  TensorElement g = p.at(1);
  if (!(exp_action(g, evaluate(w, 0)) == evaluate(w, 1)))
    throw Error("gauge_from_homotopy: recovered gauge failed verification");
  return g;
}

HomotopyDecision homotopy_equivalent(const TensorElement &x, const TensorElement &y, const SearchBudget &budget) {
  HomotopyDecision out{gauge_equivalent(x, y, budget), std::nullopt};
  if (out.gauge.verdict == Verdict::Equivalent)
    out.path = homotopy_from_gauge(*out.gauge.witness, x, exp_action(*out.gauge.witness, x));
  return out;
}

Subspace tangent_difference_image(const DglaPtr &l) {
  const std::size_t n1 = l->dim(1);
  if (l->dim(0) == 0)
    return Subspace::zero(n1);
  ArtinPtr eps = std::make_shared<const ArtinAlgebra>(ArtinAlgebra({"e"}, {Scalar(0)}, "eps"));
  std::vector<Vec> diffs;
  for (std::size_t k = 0; k < l->dim(0); ++k) {
    TensorElement e = TensorElement::pure(l, eps, 0, unit_vector(l->dim(0), k), {1});
    OmegaElement w{PolyPath::monomial(differential(e), 1, 1), PolyPath::constant(e, 1)};
    if (!mc_omega_check(w).ok())
      throw Error("tangent_difference_image: δ(e)t + e dt is not tangent to MC_Ω");
    diffs.push_back((evaluate(w, 1) - evaluate(w, 0)).coeffs);
  }
  return Subspace::span(n1, diffs);
}

} // namespace dgla

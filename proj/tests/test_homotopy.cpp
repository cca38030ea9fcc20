#include "dgla/bch.hpp"
#include "dgla/fixtures.hpp"
#include "dgla/homotopy.hpp"
#include "dgla/sampling.hpp"

#include <fmt/format.h>
#include <gtest/gtest.h>

using namespace dgla;

namespace {

PolyPath sample_path(const DglaPtr &l, const ArtinPtr &a, int degree, int t_degree, int cap, Lcg &rng) {
  PolyPath out = PolyPath::zero(l, a, degree, cap);
  for (int k = 0; k <= t_degree; ++k)
    out = out + PolyPath::monomial(sample_tensor(l, a, degree, rng), k, cap);
  return out;
}

OmegaElement d2_path() {
  auto l = fixtures::d2();
  auto eps = fixtures::eps();
  return {PolyPath::monomial(TensorElement::pure(l, eps, 1, {-1}, {1}), 1, 2),
          PolyPath::constant(TensorElement::pure(l, eps, 0, {-1}, {1}), 2)};
}

} // namespace

TEST(PolyPath, CalculusBasics) {
  auto l = fixtures::hw2();
  auto a = fixtures::t3();
  Lcg rng(3);
  auto p = sample_path(l, a, 1, 2, 4, rng);
  EXPECT_TRUE(p.integral_from(0).coefficient(0).is_zero());
  EXPECT_EQ(p.integral_from(0).derivative(), p);
  EXPECT_TRUE(p.integral_from(Scalar(2, 3)).at(Scalar(2, 3)).is_zero());
  // Horner against direct sums
  Scalar s(-3, 2);
  TensorElement want = TensorElement::zero(l, a, 1);
  Scalar pw = 1;
  for (int k = 0; k <= 4; ++k, pw *= s)
    want = want + pw * p.coefficient(k);
  EXPECT_EQ(p.at(s), want);
}

TEST(PolyPath, CapOverflowRaises) {
  auto l = fixtures::hw2();
  auto a = fixtures::t3();
  Lcg rng(4);
  auto p = sample_path(l, a, 0, 1, 1, rng);
  EXPECT_THROW(p.integral_from(0), PathCapError);
  auto x = TensorElement::pure(l, a, 0, unit_vector(l->dim(0), 0), {1, 0});
  EXPECT_THROW(PolyPath::monomial(x, 3, 2), PathCapError);
}

TEST(Omega, DifferentialExamples) {
  auto l = fixtures::qobs();
  auto eps = fixtures::eps();
  auto x = TensorElement::pure(l, eps, 1, {1}, {1});
  OmegaElement c{PolyPath::constant(x, 2), PolyPath::zero(l, eps, 0, 2)};
  auto dc = omega_differential(c);
  EXPECT_EQ(dc.a, PolyPath::constant(differential(x), 2));
  EXPECT_EQ(dc.b.t_degree(), -1);
  OmegaElement tx{PolyPath::monomial(x, 1, 2), PolyPath::zero(l, eps, 0, 2)};
  // dt-component of δ_Ω(t x) is -x for |x| = 1
  EXPECT_EQ(omega_differential(tx).b, PolyPath::constant(-x, 2));
}

TEST(Omega, BracketOfConstantsIsConstantBracket) {
  auto l = fixtures::hw2();
  auto a = fixtures::t3();
  Lcg rng(5);
  auto x = sample_tensor(l, a, 1, rng), y = sample_tensor(l, a, 1, rng);
  OmegaElement cx{PolyPath::constant(x, 1), PolyPath::zero(l, a, 0, 1)};
  OmegaElement cy{PolyPath::constant(y, 1), PolyPath::zero(l, a, 0, 1)};
  auto br = omega_bracket(cx, cy);
  EXPECT_EQ(br.a, PolyPath::constant(bracket(x, y), 1));
  EXPECT_EQ(br.b.t_degree(), -1);
}

TEST(Omega, McIsTheMaurerCartanEquationOfOmega) {
  Lcg rng(6);
  for (const char *name : {"HW2", "D2", "QOBS", "CPLX2_d"}) {
    auto l = fixtures::dgla(name);
    auto a = fixtures::t3();
    for (int trial = 0; trial < 5; ++trial) {
      OmegaElement w{sample_path(l, a, 1, 2, 4, rng), sample_path(l, a, 0, 1, 4, rng)};
      auto dw = omega_differential(w);
      auto br = omega_bracket(w, w);
      bool zero = (dw.a + Scalar(1, 2) * br.a).t_degree() < 0 && (dw.b + Scalar(1, 2) * br.b).t_degree() < 0;
      EXPECT_EQ(zero, mc_omega_check(w).ok()) << name;
      // a genuine homotopy
      auto x = sample_mc(l, a, rng);
      auto g = sample_tensor(l, a, 0, rng);
      auto h = homotopy_from_gauge(g, x, exp_action(g, x));
      auto dh = omega_differential(h);
      auto bh = omega_bracket(h, h);
      EXPECT_EQ((dh.a + Scalar(1, 2) * bh.a).t_degree(), -1) << name;
      EXPECT_EQ((dh.b + Scalar(1, 2) * bh.b).t_degree(), -1) << name;
    }
  }
}

TEST(Omega, McCheckExamples) {
  auto w = d2_path();
  EXPECT_TRUE(mc_omega_check(w).ok());
  auto l = fixtures::d2();
  auto eps = fixtures::eps();
  EXPECT_EQ(evaluate(w, 1), TensorElement::pure(l, eps, 1, {-1}, {1}));
  EXPECT_TRUE(evaluate(w, 0).is_zero());
  // QOBS: a(t) = t·e⊗t fails pointwise MC
  auto q = fixtures::qobs();
  auto t3 = fixtures::t3();
  OmegaElement bad{PolyPath::monomial(TensorElement::pure(q, t3, 1, {1}, {1, 0}), 1, 2),
                   PolyPath::zero(q, t3, 0, 2)};
  auto r = mc_omega_check(bad);
  EXPECT_FALSE(r.pointwise_mc);
  EXPECT_FALSE(r.ok());
  // constant MC path
  OmegaElement c{PolyPath::constant(TensorElement::pure(q, t3, 1, {1}, {0, 1}), 2), PolyPath::zero(q, t3, 0, 2)};
  EXPECT_TRUE(mc_omega_check(c).ok());
}

TEST(Omega, EvaluationIsAMorphism) {
  Lcg rng(7);
  for (const char *name : {"HW2", "POLY", "QOBS_d"}) {
    auto l = fixtures::dgla(name);
    auto a = fixtures::xy_square();
    for (int trial = 0; trial < 5; ++trial) {
      OmegaElement x{sample_path(l, a, 1, 2, 4, rng), sample_path(l, a, 0, 2, 4, rng)};
      OmegaElement y{sample_path(l, a, 0, 2, 4, rng), sample_path(l, a, -1, 2, 4, rng)};
      if (l->dim(-1) == 0)
        y.b = PolyPath::zero(l, a, -1, 4);
      Scalar s = Scalar(rng.coeff()) / 2;
      EXPECT_EQ(evaluate(omega_differential(x), s), differential(evaluate(x, s))) << name;
      EXPECT_EQ(evaluate(omega_bracket(x, y), s), bracket(evaluate(x, s), evaluate(y, s))) << name;
    }
  }
}

TEST(LiftOmega, TowersAndExamples) {
  Lcg rng(8);
  for (const char *name : {"D2", "HW2", "QOBS", "CPLX2"}) {
    auto l = fixtures::dgla(name);
    auto tower = small_extension_tower(fixtures::t3());
    const SmallExtension &e = tower.front(); // t3 -> t2
    // homotopy over the quotient from a gauge pair
    auto xb = sample_mc(l, e.quotient, rng);
    auto g = sample_tensor(l, e.quotient, 0, rng);
    auto wb = homotopy_from_gauge(g, xb, exp_action(g, xb));
    for (const Scalar &s : {Scalar(0), Scalar(1)}) {
      auto lifted = lift_through_extension(evaluate(wb, s), e);
      if (!lifted)
        continue;
      auto wa = lift_omega(wb, e, *lifted, s);
      EXPECT_TRUE(mc_omega_check(wa).ok()) << name;
      EXPECT_EQ(evaluate(wa, s), *lifted) << name;
      for (int k = 0; k <= wa.a.cap; ++k)
        EXPECT_EQ(tensor_apply(l->dim(1), e.projection.matrix, wa.a.coefficient(k).coeffs),
                  wb.a.coefficient(k).coeffs);
    }
  }
}

TEST(LiftOmega, ConstantPathAndTrivialExtension) {
  auto l = fixtures::hw2();
  auto t3 = fixtures::t3();
  Lcg rng(9);
  auto tower = small_extension_tower(t3);
  const SmallExtension &e = tower.front();
  auto xb = sample_mc(l, e.quotient, rng);
  OmegaElement cb{PolyPath::constant(xb, 2), PolyPath::zero(l, e.quotient, 0, 2)};
  if (auto lifted = lift_through_extension(xb, e)) {
    auto wa = lift_omega(cb, e, *lifted);
    EXPECT_TRUE(mc_omega_check(wa).ok());
    EXPECT_EQ(wa.a, PolyPath::constant(*lifted, 2));
  }
  auto triv = small_extension(t3, Subspace::zero(t3->dim_m()));
  auto x = sample_mc(l, t3, rng);
  auto g = sample_tensor(l, triv.quotient, 0, rng);
  auto xq = TensorElement{l, triv.quotient, 1, tensor_apply(l->dim(1), triv.projection.matrix, x.coeffs)};
  auto w = homotopy_from_gauge(g, xq, exp_action(g, xq));
  auto wa = lift_omega(w, triv, TensorElement{l, t3, 1, tensor_apply(l->dim(1), triv.section, xq.coeffs)});
  EXPECT_EQ(wa.a.coeffs, w.a.with_cap(wa.a.cap).coeffs);
  EXPECT_EQ(wa.b.coeffs, w.b.with_cap(wa.b.cap).coeffs);
}

TEST(LiftOmega, RejectsBadAnchor) {
  auto w = d2_path();
  auto l = fixtures::d2();
  auto t3 = fixtures::t3();
  auto e = small_extension_tower(t3).front();
  // the D2 path lives over eps, which is the quotient t3 -> t2 only up to relabeling
  OmegaElement wb{PolyPath::monomial(TensorElement::pure(l, e.quotient, 1, {-1}, {1}), 1, 2),
                  PolyPath::constant(TensorElement::pure(l, e.quotient, 0, {-1}, {1}), 2)};
  ASSERT_TRUE(mc_omega_check(wb).ok());
  EXPECT_THROW(lift_omega(wb, e, TensorElement::pure(l, t3, 1, {1}, {1, 0})), Error);
  auto wa = lift_omega(wb, e, TensorElement::zero(l, t3, 1));
  EXPECT_TRUE(mc_omega_check(wa).ok());
  (void)w;
}

TEST(BchGamma, Examples) {
  auto l = fixtures::hw2();
  auto t3 = fixtures::t3();
  Lcg rng(10);
  auto n = sample_tensor(l, t3, 0, rng);
  EXPECT_EQ(bch_gamma(PolyPath::constant(n, 3)).t_degree(), -1);
  EXPECT_EQ(bch_gamma(PolyPath::monomial(n, 1, 3)).t_degree(), -1);
}

// Oracle: over N[t] with m_A^3 = 0 only the order-2 BCH term survives, so
// log(e^{p+hp'} e^{-p}) = hp' + ½[p + hp', -p] and γ_p = ½[p, p'].
TEST(BchGamma, SecondOrderOracle) {
  Lcg rng(11);
  for (const char *name : {"HW2", "POLY", "D2_d"}) {
    auto l = fixtures::dgla(name);
    auto a = fixtures::t3();
    for (int trial = 0; trial < 5; ++trial) {
      auto p = sample_path(l, a, 0, 2, 6, rng);
      EXPECT_EQ(bch_gamma(p), Scalar(1, 2) * path_bracket(p, p.derivative())) << name;
    }
  }
}

// Defining identity at order h over the t4 ring, where higher BCH terms
// contribute: compare with bch() of the evaluated endpoints on 𝕂[h]/(h^2).
TEST(BchGamma, DefiningIdentityAtOrderH) {
  Lcg rng(12);
  auto l = fixtures::hw2();
  auto base = fixtures::t4();
  // A ⊗ 𝕂[h]/(h^2) as a truncated polynomial ring in t and h
  auto ah = build_truncated_poly({"t", "h"}, std::vector<std::string>{"t^4", "h^2"});
  std::vector<std::size_t> t_index, th_index;
  for (int k = 1; k <= 3; ++k) {
    t_index.push_back(ah->index_of(k == 1 ? "t" : fmt::format("t^{}", k)));
    th_index.push_back(ah->index_of(k == 1 ? "th" : fmt::format("t^{}h", k)));
  }
  auto embed = [&](const TensorElement &x, bool times_h) {
    TensorElement out = TensorElement::zero(l, ah, x.degree);
    for (std::size_t k = 0; k < x.dim_l(); ++k)
      for (std::size_t p = 0; p < 3; ++p)
        out.coeffs[k * ah->dim_m() + (times_h ? th_index[p] : t_index[p])] = x.at(k, p);
    return out;
  };
  for (int trial = 0; trial < 4; ++trial) {
    auto p = sample_path(l, base, 0, 2, 8, rng);
    auto gamma = bch_gamma(p);
    for (const Scalar &s : {Scalar(0), Scalar(1), Scalar(-2), Scalar(1, 3)}) {
      auto lhs = bch(embed(p.at(s), false) + embed(p.derivative().at(s), true), -embed(p.at(s), false));
      auto want = embed(p.derivative().at(s) + gamma.at(s), true);
      EXPECT_EQ(lhs, want);
    }
  }
}

TEST(GaugeOde, AbelianAndConstant) {
  auto l = fixtures::d2();
  auto t3 = fixtures::t3();
  Lcg rng(13);
  auto b = sample_path(l, t3, 0, 2, 6, rng);
  EXPECT_EQ(solve_gauge_ode(b), b.integral_from(0));
  auto hw = fixtures::hw2();
  auto c = sample_tensor(hw, t3, 0, rng);
  EXPECT_EQ(solve_gauge_ode(PolyPath::constant(c, 4)), PolyPath::monomial(c, 1, 4));
}

TEST(GaugeOde, SolutionAndUniqueness) {
  Lcg rng(14);
  for (const char *name : {"HW2", "POLY", "HW2_d"}) {
    auto l = fixtures::dgla(name);
    for (const char *ring : {"t3", "t4", "x2y2"}) {
      auto a = fixtures::ring(ring);
      const int cap = default_path_cap(*a, 1);
      auto b = sample_path(l, a, 0, 1, cap, rng);
      auto p = solve_gauge_ode(b);
      EXPECT_TRUE(p.coefficient(0).is_zero());
      EXPECT_EQ(p.derivative() + bch_gamma(p), b) << name << ring;
      // a different starting lift gives the same solution
      auto start = PolyPath::monomial(sample_tensor(l, a, 0, rng), 1, cap);
      EXPECT_EQ(solve_gauge_ode(b, start), p) << name << ring;
    }
  }
}

TEST(Homotopy, FromGaugeExamples) {
  auto l = fixtures::d2();
  auto eps = fixtures::eps();
  auto g = TensorElement::pure(l, eps, 0, {1}, {1});
  auto w = homotopy_from_gauge(g, TensorElement::zero(l, eps, 1), TensorElement::pure(l, eps, 1, {-1}, {1}));
  auto want = d2_path();
  EXPECT_EQ(w.a, want.a);
  EXPECT_EQ(w.b, want.b);
  auto back = gauge_from_homotopy(w);
  EXPECT_EQ(back, g);
  // g = 0 gives the constant path
  auto q = fixtures::qobs();
  auto x = TensorElement::pure(q, eps, 1, {2}, {1});
  auto c = homotopy_from_gauge(TensorElement::zero(q, eps, 0), x, x);
  EXPECT_EQ(c.a, PolyPath::constant(x, 1));
  EXPECT_TRUE(gauge_from_homotopy(c).is_zero());
  EXPECT_THROW(homotopy_from_gauge(g, TensorElement::zero(l, eps, 1), TensorElement::zero(l, eps, 1)), Error);
}

TEST(Homotopy, RoundTripOnEveryFixtureAndRing) {
  Lcg rng(15);
  for (const auto &name : fixtures::dgla_names()) {
    auto l = fixtures::dgla(name);
    for (const auto &ring : fixtures::ring_names()) {
      auto a = fixtures::ring(ring);
      for (int trial = 0; trial < 3; ++trial) {
        auto x = sample_mc(l, a, rng);
        auto g = sample_tensor(l, a, 0, rng);
        auto y = exp_action(g, x);
        auto w = homotopy_from_gauge(g, x, y);
        auto g2 = gauge_from_homotopy(w);
        EXPECT_EQ(exp_action(g2, x), y) << name << ring;
        // and back to a homotopy with the same endpoints
        auto w2 = homotopy_from_gauge(g2, x, y);
        EXPECT_EQ(evaluate(w2, 0), x);
        EXPECT_EQ(evaluate(w2, 1), y);
      }
    }
  }
}

TEST(Homotopy, GeneralPathsGiveGauges) {
  // lift a homotopy through a tower, then recover a gauge from it
  Lcg rng(16);
  for (const char *name : {"HW2", "D2", "POLY"}) {
    auto l = fixtures::dgla(name);
    auto tower = small_extension_tower(fixtures::t4());
    const SmallExtension &e = tower.front();
    auto xb = sample_mc(l, e.quotient, rng);
    auto g = sample_tensor(l, e.quotient, 0, rng);
    auto wb = homotopy_from_gauge(g, xb, exp_action(g, xb));
    auto anchor = lift_through_extension(xb, e);
    ASSERT_TRUE(anchor) << name;
    auto wa = lift_omega(wb, e, *anchor);
    auto ga = gauge_from_homotopy(wa);
    EXPECT_EQ(exp_action(ga, evaluate(wa, 0)), evaluate(wa, 1)) << name;
  }
}

TEST(Homotopy, TangentDifferenceImageIsB1) {
  for (const auto &name : fixtures::dgla_names()) {
    auto l = fixtures::dgla(name);
    const auto &h = cohomology(*l);
    if (!h.has(1))
      continue;
    EXPECT_EQ(tangent_difference_image(l), h.at(1).b) << name;
  }
  EXPECT_EQ(tangent_difference_image(fixtures::d2()), Subspace::full(1));
  EXPECT_EQ(tangent_difference_image(fixtures::qobs()).dim(), 0u);
  EXPECT_EQ(tangent_difference_image(fixtures::cplx2()).dim(), 0u);
}

TEST(Homotopy, EquivalenceSynthesizesPath) {
  auto l = fixtures::d2();
  auto eps = fixtures::eps();
  auto x = TensorElement::pure(l, eps, 1, {1}, {1});
  auto dec = homotopy_equivalent(x, TensorElement::zero(l, eps, 1));
  ASSERT_TRUE(dec.path);
  EXPECT_EQ(evaluate(*dec.path, 0), x);
  EXPECT_TRUE(evaluate(*dec.path, 1).is_zero());
}

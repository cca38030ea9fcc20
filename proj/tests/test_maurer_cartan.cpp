#include "dgla/fixtures.hpp"
#include "dgla/maurer_cartan.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dgla;

namespace {

Vec random_vec(std::mt19937 &rng, std::size_t n) {
  std::uniform_int_distribution<int> dist(-3, 3);
  Vec v(n);
  for (auto &x : v)
    x = dist(rng);
  return v;
}

Vec random_in(std::mt19937 &rng, const Subspace &s) {
  Vec c = random_vec(rng, s.dim());
  return s.dim() == 0 ? zeros(s.ambient_dim()) : s.basis() * c;
}

const SmallExtension &t3_top() {
  static const SmallExtension e = small_extension_tower(fixtures::t3()).front();
  return e;
}

// Brute force: the lifts of x are section(x) + w with w ∈ L^1 ⊗ M.  Because
// m_B·M = 0 the residual is affine in w; build that affine map column by
// column from mc_residual alone and solve it.
bool brute_force_liftable(const TensorElement &x, const SmallExtension &e) {
  TensorElement base = section_lift(x, e);
  TensorElement h0 = mc_residual(base);
  std::vector<Vec> cols;
  for (std::size_t k = 0; k < x.dim_l(); ++k)
    for (std::size_t c = 0; c < e.ideal.dim(); ++c) {
      TensorElement w = TensorElement::pure(x.l, e.total, 1, unit_vector(x.dim_l(), k), e.ideal.vector(c));
      cols.push_back((mc_residual(base + w) - h0).coeffs);
    }
  Matrix a = Matrix::from_columns(h0.coeffs.size(), cols);
  return solve_affine(a, -h0.coeffs).has_value();
}

std::vector<std::string> fixtures_with_h2() {
  std::vector<std::string> out;
  for (const auto &n : fixtures::dgla_names()) {
    auto l = fixtures::dgla(n);
    if (l->dim(2) == 0 || cohomology(*l).has(2))
      out.push_back(n);
  }
  return out;
}

} // namespace

TEST(McResidual, Abel1IsZero) {
  auto l = fixtures::abel1();
  auto x = TensorElement::pure(l, fixtures::eps(), 1, {1}, {1});
  EXPECT_TRUE(mc_residual(x).is_zero());
  EXPECT_TRUE(mc_check(x));
}

TEST(McResidual, QobsOverT3) {
  auto l = fixtures::qobs();
  auto a = fixtures::t3();
  auto x = TensorElement::pure(l, a, 1, {1}, unit_vector(2, 0));
  auto h = mc_residual(x);
  EXPECT_EQ(h.degree, 2);
  EXPECT_EQ(h.coeffs, (Vec{0, Scalar(1, 2)}));
  EXPECT_FALSE(mc_check(x));
}

TEST(McResidual, Cplx2FirstOrder) {
  auto l = fixtures::cplx2();
  auto x = TensorElement::pure(l, fixtures::eps(), 1, {0, 1, 1, 0}, {1});
  EXPECT_TRUE(mc_check(x));
  // (J+H)^2 = -I with H = [[1,0],[0,-1]] ε is also first-order MC
  EXPECT_TRUE(mc_check(TensorElement::pure(l, fixtures::eps(), 1, {1, 0, 0, -1}, {1})));
  // the identity direction is not: JI + IJ = 2J
  EXPECT_FALSE(mc_check(TensorElement::pure(l, fixtures::eps(), 1, {1, 0, 0, 1}, {1})));
}

TEST(McResidual, WrongDegreeThrows) {
  auto l = fixtures::qobs();
  auto x = TensorElement::pure(l, fixtures::eps(), 2, {1}, {1});
  EXPECT_THROW(mc_residual(x), Error);
}

TEST(McResidual, MatchesMatrixIdentityOnCplx2) {
  // residual of X = Σ X_p t^p is (JX+XJ+X^2) computed in 𝕂[t]/(t^4)
  auto l = fixtures::cplx2();
  auto a = fixtures::t4();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Vec coeffs = random_vec(rng, 12);
    TensorElement x{l, a, 1, coeffs};
    auto h = mc_residual(x);
    std::vector<Matrix> xs(4, Matrix(2, 2));
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t p = 0; p < 3; ++p)
        xs[p + 1](k / 2, k % 2) = coeffs[k * 3 + p];
    Matrix j{{0, 1}, {-1, 0}};
    for (std::size_t deg = 1; deg <= 3; ++deg) {
      Matrix want = j * xs[deg] + xs[deg] * j;
      for (std::size_t p = 1; p < deg; ++p)
        want = want + xs[p] * xs[deg - p];
      for (std::size_t k = 0; k < 4; ++k)
        EXPECT_EQ(h.at(k, deg - 1), want(k / 2, k % 2));
    }
  }
}

TEST(McTangent, Examples) {
  EXPECT_EQ(mc_tangent(*fixtures::abel1()).dim(), 1u);
  auto q = mc_tangent(*fixtures::qobs());
  EXPECT_EQ(q.dim(), 1u);
  EXPECT_TRUE(q.contains(Vec{1}));
  auto c = mc_tangent(*fixtures::cplx2());
  EXPECT_EQ(c.dim(), 2u);
  EXPECT_TRUE(c.contains(Vec{0, 1, 1, 0}));
  EXPECT_TRUE(c.contains(Vec{1, 0, 0, -1}));
}

TEST(McTangent, FirstOrderMcIsExactlyTangent) {
  std::mt19937 rng(3);
  for (const auto &name : fixtures::dgla_names()) {
    auto l = fixtures::dgla(name);
    auto z = mc_tangent(*l);
    for (int trial = 0; trial < 5; ++trial) {
      Vec v = random_vec(rng, l->dim(1));
      bool mc = mc_check(TensorElement::pure(l, fixtures::eps(), 1, v, {1}));
      EXPECT_EQ(mc, z.contains(v)) << name;
    }
  }
}

TEST(Obstruction, QobsIsHalfASquared) {
  auto l = fixtures::qobs();
  const auto &e = t3_top();
  ASSERT_EQ(e.ideal.dim(), 1u);
  for (int a = -3; a <= 3; ++a) {
    auto x = TensorElement::pure(l, e.quotient, 1, {a}, {1});
    auto ob = obstruction_of_lift(x, e);
    ASSERT_EQ(ob.coords.rows(), 1u);
    ASSERT_EQ(ob.coords.cols(), 1u);
    // the ideal generator is t^2, and [f] is the H^2 representative
    EXPECT_EQ(e.ideal.vector(0), (Vec{0, 1}));
    EXPECT_EQ(ob.coords(0, 0), Scalar(a * a) / 2);
    EXPECT_EQ(ob.is_zero(), a == 0);
    // every lift x + z e t^2 has the same residual
    for (int z = -2; z <= 2; ++z) {
      auto lift = section_lift(x, e) + TensorElement::pure(l, e.total, 1, {z}, {0, 1});
      EXPECT_EQ(obstruction_of_given_lift(lift, e).coords, ob.coords);
      EXPECT_EQ(mc_residual(lift).coeffs, (Vec{0, Scalar(a * a) / 2}));
    }
    EXPECT_EQ(lift_through_extension(x, e).has_value(), a == 0);
  }
}

TEST(Obstruction, QobsZeroLiftIsBEtSquared) {
  auto l = fixtures::qobs();
  const auto &e = t3_top();
  auto zero = TensorElement::zero(l, e.quotient, 1);
  auto fam = lift_family(zero, e);
  ASSERT_TRUE(fam.has_value());
  ASSERT_EQ(fam->directions.size(), 1u);
  for (int b = -2; b <= 2; ++b) {
    auto x = fam->particular + TensorElement{l, e.total, 1, Scalar(b) * fam->directions[0]};
    EXPECT_TRUE(mc_check(x));
  }
}

TEST(Obstruction, Cplx2LiftSolvesJAPlusAJ) {
  auto l = fixtures::cplx2();
  const auto &e = t3_top();
  auto x = TensorElement::pure(l, e.quotient, 1, {0, 1, 1, 0}, {1});
  ASSERT_TRUE(mc_check(x));
  auto ob = obstruction_of_lift(x, e);
  EXPECT_EQ(ob.coords.rows(), 0u); // H^2 = 0
  EXPECT_TRUE(ob.is_zero());
  // the cocycle itself is H1^2 = I
  EXPECT_EQ(ob.cocycle.column(0), (Vec{1, 0, 0, 1}));
  auto lift = lift_through_extension(x, e);
  ASSERT_TRUE(lift.has_value());
  EXPECT_TRUE(mc_check(*lift));
  EXPECT_EQ(base_change(*lift, e.projection), x);
  // the t^2 part A satisfies JA + AJ = -I
  Matrix a(2, 2);
  for (std::size_t k = 0; k < 4; ++k)
    a(k / 2, k % 2) = lift->at(k, 1);
  Matrix j{{0, 1}, {-1, 0}};
  EXPECT_EQ(j * a + a * j, (Matrix{{-1, 0}, {0, -1}}));
  // the example solution [[0,1],[0,0]] is in the family
  auto fam = lift_family(x, e);
  ASSERT_TRUE(fam.has_value());
  TensorElement example = section_lift(x, e) + TensorElement::pure(l, e.total, 1, {0, 1, 0, 0}, {0, 1});
  EXPECT_TRUE(mc_check(example));
  Subspace dirs = Subspace::span(example.coeffs.size(), fam->directions);
  EXPECT_TRUE(dirs.contains((example - fam->particular).coeffs));
}

TEST(Obstruction, AbelianAlwaysZero) {
  auto l = fixtures::abel1();
  for (const auto &e : small_extension_tower(fixtures::t4())) {
    if (e.quotient->dim_m() == 0)
      continue;
    auto x = TensorElement::pure(l, e.quotient, 1, {2}, unit_vector(e.quotient->dim_m(), 0));
    EXPECT_TRUE(obstruction_of_lift(x, e).is_zero());
  }
}

TEST(Obstruction, NotMcThrows) {
  auto l = fixtures::cplx2();
  const auto &e = t3_top();
  auto x = TensorElement::pure(l, e.quotient, 1, {1, 0, 0, 1}, {1});
  EXPECT_THROW(obstruction_of_lift(x, e), Error);
  EXPECT_THROW(lift_through_extension(x, e), Error);
}

TEST(Obstruction, WrongRingThrows) {
  auto l = fixtures::qobs();
  auto x = TensorElement::pure(l, fixtures::xy_square(), 1, {1}, {1, 0});
  EXPECT_THROW(obstruction_of_lift(x, t3_top()), Error);
}

// Completeness and lift independence on every fixture with computable H^2,
// over every step of the t^4 and x2y2 towers, starting from first-order
// cocycles lifted step by step.
TEST(Obstruction, CompletenessAndLiftIndependence) {
  std::mt19937 rng(29);
  const std::vector<ArtinPtr> rings{fixtures::t4(), fixtures::x2y2()};
  std::size_t obstructed = 0, unobstructed = 0;
  for (const auto &name : fixtures_with_h2()) {
    auto l = fixtures::dgla(name);
    auto z1 = mc_tangent(*l);
    for (const auto &ring : rings) {
      auto tower = small_extension_tower(ring);
      for (int trial = 0; trial < 3; ++trial) {
        // walk the tower bottom-up; element 0 is the top step
        std::optional<TensorElement> x;
        for (auto it = tower.rbegin(); it != tower.rend(); ++it) {
          const auto &e = *it;
          if (!x) {
            // first step: 𝕂 -> 𝕂[ideal]; choose any first-order cocycle
            x = TensorElement::pure(l, e.total, 1, random_in(rng, z1), e.ideal.vector(0));
            ASSERT_TRUE(mc_check(*x)) << name;
            continue;
          }
          auto ob = obstruction_of_lift(*x, e);
          // an arbitrary perturbed lift gives the same class
          Vec w = random_vec(rng, l->dim(1));
          auto perturbed = section_lift(*x, e) + TensorElement::pure(l, e.total, 1, w, e.ideal.vector(0));
          auto ob2 = obstruction_of_given_lift(perturbed, e);
          EXPECT_EQ(ob.coords, ob2.coords) << name;
          bool brute = brute_force_liftable(*x, e);
          auto lift = lift_through_extension(*x, e);
          EXPECT_EQ(lift.has_value(), ob.is_zero()) << name;
          EXPECT_EQ(brute, ob.is_zero()) << name;
          if (!lift)
            break;
          ++(ob.is_zero() ? unobstructed : obstructed);
          EXPECT_TRUE(mc_check(*lift));
          EXPECT_EQ(base_change(*lift, e.projection), *x);
          // move along the lift family to a different lift
          auto fam = lift_family(*x, e);
          TensorElement next = fam->particular;
          for (const auto &dvec : fam->directions)
            next = next + TensorElement{l, e.total, 1, Scalar(random_vec(rng, 1)[0]) * dvec};
          ASSERT_TRUE(mc_check(next)) << name;
          x = next;
        }
      }
    }
  }
  EXPECT_GT(unobstructed, 0u);
}

TEST(PrimaryObstruction, Examples) {
  EXPECT_EQ(primary_obstruction(*fixtures::qobs(), {1}), (Vec{Scalar(1, 2)}));
  EXPECT_TRUE(primary_obstruction(*fixtures::abel1(), {1}).empty());
  EXPECT_TRUE(primary_obstruction(*fixtures::cplx2(), {0, 1, 1, 0}).empty());
  EXPECT_THROW(primary_obstruction(*fixtures::cplx2(), {1, 0, 0, 1}), Error);
}

TEST(PrimaryObstruction, EqualsObstructionOverT3) {
  std::mt19937 rng(5);
  const auto &e = t3_top();
  for (const auto &name : fixtures_with_h2()) {
    auto l = fixtures::dgla(name);
    auto z1 = mc_tangent(*l);
    for (int trial = 0; trial < 4; ++trial) {
      Vec xi = random_in(rng, z1);
      auto ob = obstruction_of_lift(TensorElement::pure(l, e.quotient, 1, xi, {1}), e);
      Vec o2 = primary_obstruction(*l, xi);
      ASSERT_EQ(ob.coords.cols(), 1u);
      EXPECT_EQ(ob.coords.column(0), o2) << name;
    }
  }
}

// Base change along the morphism of extensions t ↦ x+y from
// 𝕂[t]/(t^3) -> 𝕂[t]/(t^2) to 𝕂[x,y]/(x^2,y^2) -> 𝕂[x,y]/(x^2,xy,y^2),
// which is multiplication by 2 on the kernels (t^2 ↦ 2xy).
TEST(PrimaryObstruction, BaseChangeFactorTwo) {
  auto big = fixtures::x2y2();
  ASSERT_EQ(big->labels(), (std::vector<std::string>{"x", "y", "xy"}));
  auto e2 = small_extension(big, Subspace::span(3, {{0, 0, 1}}));
  ASSERT_EQ(e2.quotient->dim_m(), 2u);
  const auto &e1 = t3_top();
  // α on m-bases: t ↦ x+y, t^2 ↦ 2xy
  AlgebraMorphism alpha{e1.total, big, Matrix{{1, 0}, {1, 0}, {0, 2}}};
  validate_morphism(alpha);
  std::mt19937 rng(17);
  for (const auto &name : fixtures_with_h2()) {
    auto l = fixtures::dgla(name);
    auto z1 = mc_tangent(*l);
    for (int trial = 0; trial < 3; ++trial) {
      Vec xi = random_in(rng, z1);
      auto x1 = TensorElement::pure(l, e1.quotient, 1, xi, {1});
      // image of ξ⊗t is ξ⊗x + ξ⊗y in the quotient's m-basis
      Vec xy = e2.projection.apply(Vec{1, 1, 0});
      auto x2 = TensorElement::pure(l, e2.quotient, 1, xi, xy);
      auto ob1 = obstruction_of_lift(x1, e1);
      auto ob2 = obstruction_of_lift(x2, e2);
      ASSERT_EQ(ob1.coords.cols(), 1u);
      ASSERT_EQ(ob2.coords.cols(), 1u);
      EXPECT_EQ(ob2.coords.column(0), Scalar(2) * ob1.coords.column(0)) << name;
      // and the lifted cocycle transforms the same way
      auto lift1 = section_lift(x1, e1);
      auto h1 = base_change(mc_residual(lift1), alpha);
      auto h2 = mc_residual(base_change(lift1, alpha));
      EXPECT_EQ(h1, h2) << name;
    }
  }
}

TEST(Smoothness, Examples) {
  auto a = smoothness_diagnostics(*fixtures::abel1());
  EXPECT_TRUE(a.bracket_Z1_in_B2);
  EXPECT_TRUE(a.bracket_Z1_zero);
  EXPECT_TRUE(a.H2_zero);
  EXPECT_TRUE(a.sufficient());

  auto q = smoothness_diagnostics(*fixtures::qobs());
  EXPECT_FALSE(q.bracket_Z1_in_B2);
  EXPECT_FALSE(q.bracket_Z1_zero);
  EXPECT_FALSE(q.H2_zero);
  EXPECT_FALSE(q.bracket_L1_in_B2);
  EXPECT_FALSE(q.sufficient());

  auto c = smoothness_diagnostics(*fixtures::cplx2());
  EXPECT_TRUE(c.H2_zero);
  EXPECT_TRUE(c.bracket_Z1_in_B2);
  EXPECT_TRUE(c.sufficient());
}

TEST(Smoothness, FlagsAgreeWithDirectBrackets) {
  for (const auto &name : fixtures_with_h2()) {
    auto l = fixtures::dgla(name);
    auto rep = smoothness_diagnostics(*l);
    auto z1 = mc_tangent(*l).vectors();
    bool zero = true;
    for (const auto &u : z1)
      for (const auto &v : z1)
        zero = zero && is_zero(l->bracket(1, u, 1, v));
    EXPECT_EQ(rep.bracket_Z1_zero, zero) << name;
    if (rep.bracket_Z1_zero)
      EXPECT_TRUE(rep.bracket_Z1_in_B2) << name;
    if (rep.bracket_L1_in_B2)
      EXPECT_TRUE(rep.bracket_Z1_in_B2) << name;
  }
}

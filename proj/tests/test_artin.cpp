#include "dgla/fixtures.hpp"
#include "dgla/sampling.hpp"

#include <gtest/gtest.h>

using namespace dgla;

namespace {

std::vector<std::size_t> filtration_dims(const ArtinAlgebra &a) {
  std::vector<std::size_t> out;
  for (const auto &s : a.filtration())
    out.push_back(s.dim());
  return out;
}

// Element of L^1 ⊗ m_D with prescribed images along to_b and to_c, when
// one exists (the pair map is injective on m_D).
std::optional<TensorElement> pair_preimage(const FibredProduct &fp, const TensorElement &xb,
                                           const TensorElement &xc) {
  const std::size_t dl = xb.dim_l();
  Matrix stacked(fp.to_b.target->dim_m() + fp.to_c.target->dim_m(), fp.product->dim_m());
  for (std::size_t c = 0; c < stacked.cols(); ++c) {
    Vec col = fp.to_b.matrix.column(c);
    Vec cc = fp.to_c.matrix.column(c);
    col.insert(col.end(), cc.begin(), cc.end());
    stacked.set_column(c, col);
  }
  Matrix big = kron(Matrix::identity(dl), stacked);
  Vec rhs;
  for (std::size_t k = 0; k < dl; ++k) {
    for (std::size_t p = 0; p < xb.dim_m(); ++p)
      rhs.push_back(xb.at(k, p));
    for (std::size_t p = 0; p < xc.dim_m(); ++p)
      rhs.push_back(xc.at(k, p));
  }
  auto sol = solve_affine(big, rhs);
  if (!sol)
    return std::nullopt;
  EXPECT_EQ(sol->nullspace.dim(), 0u);
  return TensorElement{xb.l, fp.product, 1, sol->particular};
}

} // namespace

TEST(TruncatedPoly, Dimensions) {
  EXPECT_EQ(fixtures::eps()->dim(), 2u);
  auto two = build_truncated_poly({"e1", "e2"}, std::vector<std::string>{"e1^2", "e1e2", "e2^2"});
  EXPECT_EQ(two->dim(), 3u);
  EXPECT_EQ(filtration_dims(*fixtures::t3()), (std::vector<std::size_t>{2, 1, 0}));
  EXPECT_EQ(fixtures::t3()->nilpotency_index(), 3);
  EXPECT_EQ(fixtures::x2y2()->labels(), (std::vector<std::string>{"x", "y", "xy"}));
  EXPECT_EQ(fixtures::xy_square()->labels(), (std::vector<std::string>{"x", "y"}));
}

TEST(TruncatedPoly, NonCofiniteRejected) {
  EXPECT_THROW(build_truncated_poly({"x", "y"}, std::vector<std::string>{"x^2"}), Error);
  EXPECT_THROW(build_truncated_poly({"x"}, std::vector<std::string>{"1"}), Error);
}

TEST(ArtinAlgebra, InvalidTablesRejected) {
  // e*e = e is not nilpotent
  EXPECT_THROW(ArtinAlgebra({"e"}, {1}), Error);
  // a*b = c but b*a = 0
  std::vector<Scalar> t(27);
  t[(0 * 3 + 1) * 3 + 2] = 1;
  EXPECT_THROW(ArtinAlgebra({"a", "b", "c"}, t), Error);
}

TEST(ArtinAlgebra, MultiplicationMatchesMonomials) {
  auto a = fixtures::x2y2();
  Vec x = unit_vector(3, 0), y = unit_vector(3, 1);
  EXPECT_EQ(a->mul(x, y), unit_vector(3, 2));
  EXPECT_TRUE(is_zero(a->mul(x, x)));
  EXPECT_EQ(a->socle(), Subspace::span(3, {unit_vector(3, 2)}));
}

TEST(Tower, Examples) {
  auto eps = small_extension_tower(fixtures::eps());
  ASSERT_EQ(eps.size(), 1u);
  EXPECT_EQ(eps[0].quotient->dim_m(), 0u);

  auto t3 = small_extension_tower(fixtures::t3());
  ASSERT_EQ(t3.size(), 2u);
  EXPECT_EQ(t3[0].ideal, Subspace::span(2, {{0, 1}})); // (t^2)
  EXPECT_EQ(t3[0].quotient->dim_m(), 1u);
  EXPECT_EQ(t3[1].ideal, Subspace::span(1, {{1}})); // (t)
  EXPECT_EQ(t3[1].quotient->dim_m(), 0u);

  auto xy = small_extension_tower(fixtures::xy_square());
  ASSERT_EQ(xy.size(), 2u);
  for (const auto &e : xy)
    EXPECT_EQ(e.ideal.dim(), 1u);
}

TEST(Tower, EveryStepIsSmall) {
  for (const auto &name : fixtures::ring_names()) {
    auto tower = small_extension_tower(fixtures::ring(name));
    EXPECT_EQ(tower.size(), fixtures::ring(name)->dim_m()) << name;
    for (std::size_t s = 0; s < tower.size(); ++s) {
      const auto &e = tower[s];
      EXPECT_EQ(e.ideal.dim(), 1u);
      for (std::size_t i = 0; i < e.total->dim_m(); ++i)
        for (const auto &v : e.ideal.vectors())
          EXPECT_TRUE(is_zero(e.total->mul(unit_vector(e.total->dim_m(), i), v))) << name;
      EXPECT_TRUE(is_surjective(e.projection));
      EXPECT_EQ(kernel(e.projection.matrix), e.ideal) << name;
      // the section is a right inverse of the projection
      EXPECT_EQ(e.projection.matrix * e.section, Matrix::identity(e.quotient->dim_m()));
      if (s + 1 < tower.size())
        EXPECT_EQ(e.quotient, tower[s + 1].total);
    }
  }
}

TEST(SmallExtension, RejectsNonSmallKernel) {
  // (t) in 𝕂[t]/(t^3) is an ideal but t·t ≠ 0
  EXPECT_THROW(small_extension(fixtures::t3(), Subspace::span(2, {{1, 0}, {0, 1}})), Error);
  EXPECT_NO_THROW(quotient(fixtures::t3(), Subspace::span(2, {{1, 0}, {0, 1}})));
  // span(t) alone is not an ideal
  EXPECT_THROW(quotient(fixtures::t3(), Subspace::span(2, {{1, 0}})), Error);
}

TEST(FibredProduct, DualNumbersOverField) {
  auto ex = fixtures::eps();
  auto ey = build_truncated_poly({"y"}, std::vector<std::string>{"y^2"});
  auto fp = fibred_product(augmentation(ex), augmentation(ey));
  EXPECT_EQ(fp.product->dim_m(), 2u);
  // explicit isomorphism with 𝕂[x,y]/(x^2,xy,y^2): x ↦ (ε;0), y ↦ (0;y)
  auto target = fixtures::xy_square();
  AlgebraMorphism p{target, ex, Matrix{{1, 0}}}, q{target, ey, Matrix{{0, 1}}};
  auto h = mediating_morphism(fp, p, q);
  validate_morphism(h);
  EXPECT_TRUE(is_isomorphism(h));
  EXPECT_EQ(compose(fp.to_b, h).matrix, p.matrix);
  EXPECT_EQ(compose(fp.to_c, h).matrix, q.matrix);
}

TEST(FibredProduct, DiagonalOfIdentity) {
  auto a = fixtures::t3();
  auto fp = fibred_product(identity_morphism(a), identity_morphism(a));
  EXPECT_EQ(fp.product->dim_m(), 2u);
  EXPECT_TRUE(is_isomorphism(fp.to_b));
  EXPECT_TRUE(is_isomorphism(fp.to_c));
}

TEST(FibredProduct, IncompatibleTargetsRejected) {
  EXPECT_THROW(fibred_product(identity_morphism(fixtures::t3()), identity_morphism(fixtures::eps())), Error);
}

// A ×_𝕂 𝕂[ε] ≅ A ×_{A/(soc)} A for A = 𝕂[t]/(t^3) via (a, ā+αε) ↦ (a, a+αt^2).
TEST(FibredProduct, SocleIsomorphism) {
  auto a = fixtures::t3();
  auto eps = fixtures::eps();
  auto left = fibred_product(augmentation(a), augmentation(eps));
  auto pi = quotient(a, a->socle());
  auto right = fibred_product(pi.projection, pi.projection);
  // the two components of the map, as morphisms out of the left product
  AlgebraMorphism first = left.to_b;
  Matrix second_m = left.to_b.matrix;
  Matrix t2_alpha = Matrix{{0}, {1}} * left.to_c.matrix; // α ↦ α t^2
  AlgebraMorphism second{left.product, a, second_m + t2_alpha};
  validate_morphism(second);
  auto phi = mediating_morphism(right, first, second);
  validate_morphism(phi);
  EXPECT_TRUE(is_isomorphism(phi));
}

TEST(FibredProduct, UniversalPropertyOnFixtureCones) {
  // cones D -> B, D -> C over every pair of tower projections with the same
  // target, with D the fibred product itself and D = B when C = B
  for (const auto &name : fixtures::ring_names()) {
    auto a = fixtures::ring(name);
    for (const auto &e : small_extension_tower(a)) {
      auto fp = fibred_product(e.projection, e.projection);
      auto h = mediating_morphism(fp, fp.to_b, fp.to_c);
      EXPECT_EQ(h.matrix, Matrix::identity(fp.product->dim_m())) << name;
      // the diagonal cone from B
      auto diag = mediating_morphism(fp, identity_morphism(e.total), identity_morphism(e.total));
      validate_morphism(diag);
      EXPECT_EQ(compose(fp.to_b, diag).matrix, Matrix::identity(e.total->dim_m()));
      EXPECT_EQ(compose(fp.to_c, diag).matrix, Matrix::identity(e.total->dim_m()));
    }
  }
  // non-commuting cone is rejected
  auto t3 = fixtures::t3();
  auto pi = small_extension_tower(t3)[0].projection;
  auto fp = fibred_product(pi, pi);
  AlgebraMorphism zero{t3, t3, Matrix(2, 2)};
  EXPECT_THROW(mediating_morphism(fp, identity_morphism(t3), zero), Error);
}

TEST(TensorNilpotent, Examples) {
  auto q = fixtures::qobs();
  auto le = tensor_nilpotent(*q, *fixtures::eps());
  EXPECT_TRUE(is_zero(le->bracket(1, {1}, 1, {1})));
  auto lt = tensor_nilpotent(*q, *fixtures::t3());
  // e⊗t = index 0, f⊗t^2 = index 1 of degree 2
  EXPECT_EQ(lt->bracket(1, {1, 0}, 1, {1, 0}), (Vec{0, 1}));
  auto c = tensor_nilpotent(*fixtures::cplx2(), *fixtures::t3());
  EXPECT_TRUE(validate_dgla(*c).passed());
}

TEST(TensorNilpotent, AxiomsForEveryFixtureAndRing) {
  for (const auto &name : {"ABEL1", "D2", "QOBS", "CPLX2", "D2_d", "QOBS_d"})
    for (const auto &ring : {"eps", "t3", "xy"}) {
      auto l = tensor_nilpotent(*fixtures::dgla(name), *fixtures::ring(ring));
      EXPECT_TRUE(validate_dgla(*l).passed()) << name << " " << ring;
    }
}

TEST(TensorNilpotent, NilpotencyClassBounded) {
  // iterated brackets of length nilpotency_index vanish in L ⊗ m_A
  auto l = fixtures::dgla("CPLX2");
  auto a = fixtures::t3();
  Lcg rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = sample_tensor(l, a, 1, rng), y = sample_tensor(l, a, 1, rng), z = sample_tensor(l, a, 1, rng);
    EXPECT_TRUE(bracket(bracket(x, y), z).is_zero());
  }
}

// MC_L(B ×_A C) -> MC_L(B) ×_{MC_L(A)} MC_L(C) is a bijection.
TEST(Homogeneity, MaurerCartanOnFibredProducts) {
  Lcg rng(8);
  struct Square {
    AlgebraMorphism f, g;
    std::optional<SmallExtension> ext; // set when g is this extension's projection
  };
  std::vector<Square> squares;
  {
    auto e = small_extension_tower(fixtures::t3())[0];
    squares.push_back({e.projection, e.projection, e});
    auto ey = build_truncated_poly({"y"}, std::vector<std::string>{"y^2"});
    squares.push_back({augmentation(fixtures::eps()), augmentation(ey), std::nullopt});
    squares.push_back({augmentation(fixtures::t3()), augmentation(fixtures::eps()), std::nullopt});
    auto exy = small_extension_tower(fixtures::x2y2())[0];
    squares.push_back({exy.projection, exy.projection, exy});
  }
  for (const auto &name : {"ABEL1", "D2", "QOBS", "CPLX2", "HW2", "POLY"}) {
    auto l = fixtures::dgla(name);
    for (const auto &sq : squares) {
      auto fp = fibred_product(sq.f, sq.g);
      for (int trial = 0; trial < 3; ++trial) {
        // forward: images of an MC element over D are MC
        auto xd = sample_mc(l, fp.product, rng);
        ASSERT_TRUE(mc_check(xd));
        EXPECT_TRUE(mc_check(base_change(xd, fp.to_b)));
        EXPECT_TRUE(mc_check(base_change(xd, fp.to_c)));
        // backward: a compatible MC pair comes from a unique MC element
        auto xb = sample_mc(l, sq.f.source, rng);
        auto xa = base_change(xb, sq.f);
        // a compatible partner over C: another MC lift of xa along g
        std::optional<TensorElement> xc;
        if (sq.ext) {
          auto fam = lift_family(xa, *sq.ext);
          ASSERT_TRUE(fam.has_value());
          xc = fam->particular;
          for (const auto &dir : fam->directions)
            xc = *xc + TensorElement{l, sq.g.source, 1, Scalar(rng.coeff()) * dir};
        } else {
          xc = sample_mc(l, sq.g.source, rng);
        }
        ASSERT_EQ(base_change(*xc, sq.g), xa);
        auto xd2 = pair_preimage(fp, xb, *xc);
        ASSERT_TRUE(xd2.has_value()) << name;
        EXPECT_TRUE(mc_check(*xd2)) << name;
      }
    }
  }
}

#include "dgla/fixtures.hpp"
#include "dgla/graded.hpp"

#include <gtest/gtest.h>

using namespace dgla;

TEST(Shift, MovesWindowDown) {
  GradedSpace k(0, {{"1"}});
  GradedSpace s = shift(k, 1);
  EXPECT_EQ(s.lo(), -1);
  EXPECT_EQ(s.dim(-1), 1u);
  EXPECT_EQ(s.dim(0), 0u);
}

TEST(Shift, ZeroAndComposition) {
  GradedSpace x = GradedSpace::with_dims(-1, {1, 2, 3});
  EXPECT_EQ(shift(x, 0), x);
  EXPECT_EQ(shift(shift(x, 2), -5), shift(x, -3));
  EXPECT_EQ(shift(x, 2).dim(-2), 2u);
}

TEST(GradedSpace, RejectsDuplicateLabels) { EXPECT_THROW(GradedSpace(0, {{"a", "a"}}), Error); }

TEST(VerifyComplex, Examples) {
  GradedSpace v = GradedSpace::with_dims(0, {2, 2, 2});
  EXPECT_TRUE(verify_complex(v, zero_map(v, 1)).passed());

  GradedMap id{1, {{0, Matrix::identity(2)}, {1, Matrix::identity(2)}}};
  EXPECT_FALSE(verify_complex(v, id).passed());

  GradedMap bad{1, {{0, Matrix::identity(3)}}};
  EXPECT_THROW(verify_complex(v, bad), ShapeError);

  auto c = fixtures::cplx2();
  EXPECT_TRUE(verify_complex(c->space(), c->differential()).passed());
}

TEST(Cohomology, Cplx2) {
  auto c = fixtures::cplx2();
  auto h = cohomology(*c);
  EXPECT_EQ(h.dim_h(1), 2u);
  EXPECT_EQ(h.dim_h(2), 0u);
  EXPECT_EQ(h.dim_h(3), 0u);
  // degree 4 is the top of an open window: not computable
  EXPECT_FALSE(h.has(4));
  // ker d in degree 1 is {[[a,b],[b,-a]]}
  Subspace expected = Subspace::span(4, {Vec{1, 0, 0, -1}, Vec{0, 1, 1, 0}});
  EXPECT_EQ(h.at(1).z, expected);
}

TEST(Cohomology, Abel1) {
  auto h = cohomology(*fixtures::abel1());
  EXPECT_EQ(h.dim_h(1), 1u);
}

TEST(Cohomology, NotAComplexThrows) {
  GradedSpace v = GradedSpace::with_dims(0, {1, 1, 1});
  GradedMap d{1, {{0, Matrix{{1}}}, {1, Matrix{{1}}}}};
  EXPECT_THROW(cohomology(v, d), Error);
}

// class_projection kills B and is bijective on the representatives
TEST(CohomologyProperties, ProjectionKillsBoundaries) {
  for (const auto &name : fixtures::dgla_names()) {
    auto l = fixtures::dgla(name);
    auto h = cohomology(*l);
    for (const auto &[deg, c] : h.degrees) {
      for (const auto &b : c.b.vectors())
        EXPECT_TRUE(is_zero(c.class_projection * b)) << name << " degree " << deg;
      EXPECT_EQ(c.class_projection * c.h.basis(), Matrix::identity(c.dim_h())) << name << " degree " << deg;
      EXPECT_TRUE(c.z.contains(c.b));
      EXPECT_EQ(c.dim_h(), c.z.dim() - c.b.dim());
    }
  }
}

// Σ(-1)^i dim H^i = Σ(-1)^i dim L^i - Σ(-1)^i rank d_i over a closed window
TEST(CohomologyProperties, EulerCharacteristic) {
  for (const auto &name : {"ABEL1", "D2", "QOBS", "POLY", "D2_d", "QOBS_d"}) {
    auto l = fixtures::dgla(name);
    ASSERT_FALSE(l->open_top());
    auto h = cohomology(*l);
    long chi_h = 0, chi_l = 0;
    for (int i = l->lo(); i <= l->hi(); ++i) {
      const long s = (i % 2 == 0) ? 1 : -1;
      chi_h += s * static_cast<long>(h.dim_h(i));
      // rank of d into degree i and out of it
      long r_out = static_cast<long>(rank(l->d_block(i)));
      long r_in = l->space().in_window(i - 1) ? static_cast<long>(rank(l->d_block(i - 1))) : 0;
      chi_l += s * (static_cast<long>(l->dim(i)) - r_out - r_in);
    }
    EXPECT_EQ(chi_h, chi_l) << name;
  }
}

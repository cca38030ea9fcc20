#include "dgla/io.hpp"

#include "dgla/builders.hpp"
#include "dgla/fixtures.hpp"
#include "dgla/sampling.hpp"

#include <gtest/gtest.h>

using namespace dgla;
using io::Json;

namespace {

DglaPtr reparse(const Dgla &l) { return io::dgla_from_json(io::parse_json(io::dgla_to_json(l).dump(2))); }

std::string parse_error_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const io::ParseError &e) {
    return e.what();
  }
  return "<no error>";
}

} // namespace

TEST(Scalars, IntegersAndFractions) {
  EXPECT_EQ(io::to_json(Scalar(3)), Json(3));
  EXPECT_EQ(io::to_json(Scalar(-1) / 2), Json("-1/2"));
  EXPECT_EQ(io::scalar_from_json(Json("6/4"), "/x"), Scalar(3) / 2);
  EXPECT_EQ(io::scalar_from_json(Json(-7), "/x"), Scalar(-7));
  mpz_class big("123456789012345678901234567890");
  EXPECT_EQ(io::scalar_from_json(io::to_json(Scalar(big)), "/x"), Scalar(big));
  EXPECT_NE(parse_error_of([] { io::scalar_from_json(Json(0.5), "/x"); }).find("/x: floating-point"),
            std::string::npos);
}

TEST(DglaJson, EveryFixtureRoundTrips) {
  for (const auto &name : fixtures::dgla_names()) {
    auto l = fixtures::dgla(name);
    auto back = reparse(*l);
    EXPECT_EQ(io::dgla_to_json(*back), io::dgla_to_json(*l)) << name;
    EXPECT_TRUE(validate_dgla(*back).passed()) << name;
    EXPECT_EQ(back->open_top(), l->open_top()) << name;
    for (int d = l->lo(); d <= l->hi(); ++d)
      EXPECT_EQ(cohomology(*back).dim_h(d), cohomology(*l).dim_h(d)) << name << " degree " << d;
  }
}

TEST(DglaJson, HalfBracketIsSymmetrized) {
  auto j = io::parse_json(R"({"schema_version": 1, "name": "Q", "window": [1, 2],
    "labels": {"1": ["e"], "2": ["f"]},
    "bracket": [{"i": 1, "j": 1, "entries": [[0, 0, 0, 1, 1]]}]})");
  auto l = io::dgla_from_json(j);
  EXPECT_EQ(l->basis_bracket(1, 0, 1, 0), (Vec{1}));
  EXPECT_TRUE(validate_dgla(*l).passed());
}

TEST(DglaJson, DimsGiveAnonymousLabels) {
  auto l = io::dgla_from_json(
      io::parse_json(R"({"schema_version": 1, "window": [0, 1], "dims": {"0": 1, "1": 1},
                         "differential": {"0": [[1]]}})"));
  EXPECT_EQ(l->dim(0), 1u);
  EXPECT_EQ(l->d(0, {1}), (Vec{1}));
  EXPECT_EQ(cohomology(*l).dim_h(1), 0u);
}

TEST(DglaJson, SchemaViolationsNameTheField) {
  EXPECT_NE(parse_error_of([] { io::dgla_from_json(io::parse_json(R"({"window": [1, 2]})")); })
                .find("/schema_version: missing field"),
            std::string::npos);
  EXPECT_NE(parse_error_of([] {
              io::dgla_from_json(io::parse_json(R"({"schema_version": 1, "window": [1, 2],
                "labels": {"1": ["e"], "2": ["f"]},
                "bracket": [{"i": 1, "j": 1, "entries": [[0, 0, 3, 1, 1]]}]})"));
            }).find("/bracket/0/entries/0/2: index 3 out of range"),
            std::string::npos);
  EXPECT_NE(parse_error_of([] {
              io::dgla_from_json(io::parse_json(R"({"schema_version": 1, "window": [1, 2],
                "labels": {"1": ["e"], "2": ["f"]}, "differential": {"1": [[1, 2]]}})"));
            }).find("/differential/1/0: expected 1 entries, got 2"),
            std::string::npos);
  EXPECT_NE(parse_error_of([] {
              io::dgla_from_json(io::parse_json(R"({"schema_version": 2, "window": [1, 1], "dims": {"1": 1}})"));
            }).find("/schema_version: unsupported version"),
            std::string::npos);
}

TEST(DglaJson, SyntaxErrorsReportLineAndColumn) {
  auto msg = parse_error_of([] { io::parse_json("{\n  \"window\": [1, 2],\n  \"name\" \"x\"\n}", "f.json"); });
  EXPECT_EQ(msg.rfind("f.json:3:", 0), 0u) << msg;
}

TEST(DglaJson, BrokenJacobiIsReportedWithItsTuple) {
  // QOBS plus c in degree 0 with [c,e] = e, [c,f] = 0: [c,[e,e]] = 0 but [[c,e],e] + [e,[c,e]] = 2f
  auto l = io::dgla_from_json(io::parse_json(R"({"schema_version": 1, "name": "QOBS_broken", "window": [0, 2],
    "labels": {"0": ["c"], "1": ["e"], "2": ["f"]},
    "bracket": [{"i": 1, "j": 1, "entries": [[0, 0, 0, 1, 1]]},
                {"i": 0, "j": 1, "entries": [[0, 0, 0, 1, 1]]}]})"));
  auto rep = validate_dgla(*l);
  ASSERT_FALSE(rep.passed());
  bool saw = false;
  for (const auto &v : rep.violations)
    saw = saw || (v.identity == "jacobi" && v.tuple == std::vector<std::string>{"c", "e", "e"});
  EXPECT_TRUE(saw);
}

TEST(RingJson, BuiltinsRoundTripThroughTables) {
  for (const auto &name : fixtures::ring_names()) {
    auto a = fixtures::ring(name);
    auto back = io::ring_from_json(io::parse_json(io::ring_to_json(*a).dump()));
    EXPECT_EQ(back->labels(), a->labels()) << name;
    EXPECT_EQ(back->table(), a->table()) << name;
  }
}

TEST(RingJson, ShorthandsAndVars) {
  auto t3 = io::load_ring("t^3");
  EXPECT_EQ(t3->labels(), fixtures::t3()->labels());
  EXPECT_EQ(t3->table(), fixtures::t3()->table());
  auto xy = io::load_ring("x^2,xy,y^2");
  EXPECT_EQ(xy->table(), fixtures::xy_square()->table());
  auto v = io::load_ring(R"({"vars": ["x", "y"], "relations": ["x^2", "y^2"]})");
  EXPECT_EQ(v->table(), fixtures::x2y2()->table());
  EXPECT_EQ(io::load_ring("builtin:eps")->dim_m(), 1u);
  EXPECT_NE(parse_error_of([] { io::load_ring(R"({"m_basis": ["a"], "table": [[0, 0, 0, 1, 1]]})"); })
                .find("/table"),
            std::string::npos);
}

TEST(ElementFormats, TextAndJsonRoundTrip) {
  Lcg rng(7);
  for (const auto &name : fixtures::dgla_names())
    for (const auto &rn : fixtures::ring_names()) {
      auto l = fixtures::dgla(name);
      auto a = fixtures::ring(rn);
      for (int deg : {0, 1}) {
        if (l->dim(deg) == 0)
          continue;
        auto x = sample_tensor(l, a, deg, rng);
        x = Scalar(1) / 3 * x;
        EXPECT_EQ(io::element_from_text(io::element_to_text(x), l, a, deg), x) << name << " " << rn;
        EXPECT_EQ(io::element_from_json(io::parse_json(io::element_to_json(x).dump()), l, a, deg), x);
      }
    }
}

TEST(ElementFormats, TextSyntax) {
  auto q = fixtures::qobs();
  auto t3 = fixtures::t3();
  auto x = io::element_from_text("e@t^2", q, t3, 1);
  EXPECT_EQ(x, TensorElement::pure(q, t3, 1, {1}, {0, 1}));
  EXPECT_EQ(io::element_from_text("-1/2*e@t + 3*e@t^2 - e@t^2", q, t3, 1),
            TensorElement::pure(q, t3, 1, {1}, {Scalar(-1) / 2, 2}));
  EXPECT_EQ(io::element_to_text(TensorElement::pure(q, t3, 1, {1}, {Scalar(-1) / 2, 2})), "-1/2*e@t + 2*e@t^2");
  EXPECT_TRUE(io::element_from_text("0", q, t3, 1).is_zero());

  // labels containing '*', '-' and digits
  auto poly = fixtures::poly();
  auto eps = fixtures::eps();
  EXPECT_EQ(io::element_from_text("2*x*dx@e", poly, eps, 0), TensorElement::pure(poly, eps, 0, unit_vector(6, 1), {2}));
  EXPECT_EQ(io::element_from_text("x*dx@e", poly, eps, 0), TensorElement::pure(poly, eps, 0, unit_vector(6, 1), {1}));
  auto hw = fixtures::hw2();
  EXPECT_EQ(io::element_from_text("1->x@e - x->1@e", hw, eps, 0),
            TensorElement::pure(hw, eps, 0, {0, 1, -1, 0}, {1}));

  EXPECT_NE(parse_error_of([&] { io::element_from_text("e@s", q, t3, 1); }).find("not a basis monomial"),
            std::string::npos);
  EXPECT_NE(parse_error_of([&] { io::element_from_text("g@t", q, t3, 1); }).find("not a basis label"),
            std::string::npos);
  EXPECT_NE(parse_error_of([&] { io::load_element(R"({"degree": 0, "coeffs": [[1, 0]]})", q, t3, 1); })
                .find("/degree"),
            std::string::npos);
  EXPECT_NE(parse_error_of([&] { io::load_element(R"({"coeffs": [[1]]})", q, t3, 1); })
                .find("/coeffs/0: expected 2 entries, got 1"),
            std::string::npos);
}

TEST(PathFormats, OmegaRoundTrips) {
  Lcg rng(3);
  for (const char *name : {"D2", "HW2", "CPLX2_d"}) {
    auto l = fixtures::dgla(name);
    auto a = fixtures::t3();
    auto x = sample_mc(l, a, rng);
    auto g = sample_tensor(l, a, 0, rng);
    auto path = homotopy_from_gauge(g, x, exp_action(g, x));
    auto back = io::omega_from_json(io::parse_json(io::omega_to_json(path).dump()), l, a);
    EXPECT_TRUE(back.a == path.a && back.b == path.b) << name;
    EXPECT_EQ(back.a.cap, path.a.cap);
    EXPECT_TRUE(mc_omega_check(back).ok());
  }
}

TEST(PathFormats, CapBelowDegreeIsRejected) {
  auto q = fixtures::qobs();
  auto t3 = fixtures::t3();
  EXPECT_NE(parse_error_of([&] {
              io::load_path(R"({"degree": 1, "cap": 0, "coeff_by_t_power": [[[0, 0]], [[1, 0]]]})", q, t3);
            }).find("/cap"),
            std::string::npos);
  auto p = io::load_path(R"({"coeff_by_t_power": [[[0, 0]], [[1, 0]]]})", q, t3);
  EXPECT_EQ(p.t_degree(), 1);
}

TEST(MorphismFormats, SpecsAndJson) {
  auto f = io::load_morphism("truncation:builtin:D2");
  EXPECT_EQ(f.target, fixtures::dgla("D2"));
  auto back = io::morphism_from_json(io::parse_json(io::morphism_to_json(f).dump()));
  EXPECT_EQ(back.blocks, f.blocks);
  EXPECT_EQ(io::morphism_to_json(back)["target"], Json("builtin:D2"));
  auto id = io::load_morphism("identity:QOBS");
  EXPECT_EQ(id.source, fixtures::dgla("QOBS"));
  EXPECT_NE(parse_error_of([] {
              io::morphism_from_json(io::parse_json(
                  R"({"source": "builtin:D2", "target": "builtin:D2", "blocks": {"0": [[1]], "1": [[2]]}})"));
            }).find("not a DGLA morphism"),
            std::string::npos);
}

TEST(Reports, KuranishiPolynomialJson) {
  auto q = io::truncated_map_to_json(kuranishi_polynomials(fixtures::qobs(), 4));
  EXPECT_EQ(q.dump(), R"({"q1":{"[2]":1}})");
}

TEST(Sources, BuiltinNamesAndErrors) {
  EXPECT_EQ(io::load_dgla("builtin:CPLX2"), fixtures::dgla("CPLX2"));
  EXPECT_EQ(io::load_dgla("HW2_d"), fixtures::dgla("HW2_d"));
  EXPECT_NE(parse_error_of([] { io::load_dgla("nope.json"); }).find("neither"), std::string::npos);
  EXPECT_THROW(io::load_dgla("builtin:NOPE"), Error);
}

TEST(Digest, Sha256) {
  EXPECT_EQ(io::digest(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(io::digest("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

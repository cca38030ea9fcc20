#include "dgla/suite.hpp"

#include "dgla/bch.hpp"
#include "dgla/builders.hpp"
#include "dgla/envelope.hpp"
#include "dgla/fixtures.hpp"
#include "dgla/gauge.hpp"
#include "dgla/homotopy.hpp"
#include "dgla/kuranishi.hpp"
#include "dgla/sampling.hpp"

#include <fmt/format.h>

#include <chrono>
#include <functional>

namespace dgla {

namespace {

struct Ctx {
  const SuiteConfig &config;
  CheckResult &result;

  void fail(const std::string &what) {
    if (result.passed)
      result.detail = what;
    result.passed = false;
  }
  void expect(bool ok, const std::string &what) {
    ++result.cases;
    if (!ok)
      fail(what);
  }
};

using CheckFn = std::function<void(Ctx &, Lcg &)>;

CheckResult run_check(const SuiteConfig &config, std::size_t index, const std::string &id, const std::string &name,
                      double budget, const CheckFn &fn) {
  CheckResult r;
  r.id = id;
  r.name = name;
  r.budget_seconds = budget;
  Ctx ctx{config, r};
  Lcg rng(config.seed * 1000003ULL + index);
  const auto start = std::chrono::steady_clock::now();
  try {
    fn(ctx, rng);
  } catch (const std::exception &e) {
    ctx.fail(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.passed && budget > 0 && r.seconds > budget) {
    r.passed = false;
    r.detail = fmt::format("took {:.2f} s, limit {:.0f} s", r.seconds, budget);
  }
  if (r.passed && r.detail.empty())
    r.detail = fmt::format("{} cases, {} skipped", r.cases, r.skipped);
  return r;
}

std::vector<ArtinPtr> rings_of(const SuiteConfig &c) {
  std::vector<ArtinPtr> out;
  for (const auto &n : c.rings)
    out.push_back(fixtures::ring(n));
  return out;
}

bool has_split(const DglaPtr &l, std::initializer_list<int> degrees) {
  auto s = build_hodge_split(l);
  for (int d : degrees)
    if (l->dim(d) > 0 && !s->has(d))
      return false;
  return s->has(1);
}

bool h0_vanishes(const Dgla &l) {
  if (l.dim(0) == 0)
    return true;
  const auto &h = cohomology(l);
  return h.has(0) && h.dim_h(0) == 0;
}

// Lifts of x are section(x) + w, w ∈ L^1 ⊗ M; the residual is affine in w.
bool brute_force_liftable(const TensorElement &x, const SmallExtension &e) {
  TensorElement base = section_lift(x, e);
  TensorElement h0 = mc_residual(base);
  std::vector<Vec> cols;
  for (std::size_t k = 0; k < x.dim_l(); ++k)
    for (std::size_t c = 0; c < e.ideal.dim(); ++c) {
      TensorElement w = TensorElement::pure(x.l, e.total, 1, unit_vector(x.dim_l(), k), e.ideal.vector(c));
      cols.push_back((mc_residual(base + w) - h0).coeffs);
    }
  return solve_affine(Matrix::from_columns(h0.coeffs.size(), cols), -h0.coeffs).has_value();
}

std::string tag(const std::string &fixture, const ArtinAlgebra &a) { return fixture + " ⊗ " + a.name(); }

// -- the twelve criteria ----------------------------------------------------

void axioms(Ctx &c, Lcg &) {
  auto check = [&](const Dgla &l, const std::string &what) {
    auto rep = validate_dgla(l, 1);
    std::string detail = what;
    if (!rep.passed()) {
      const auto &v = rep.violations.front();
      detail += ": " + v.identity + " fails at (";
      for (std::size_t i = 0; i < v.tuple.size(); ++i)
        detail += (i ? ", " : "") + v.tuple[i];
      detail += ")";
    }
    c.expect(rep.passed(), detail);
  };
  for (const auto &[name, l] : c.config.dglas) {
    check(*l, name);
    for (const auto &a : rings_of(c.config))
      check(*tensor_nilpotent(*l, *a), tag(name, *a));
  }
}

void gauge_stability(Ctx &c, Lcg &rng) {
  for (const auto &[name, l] : c.config.dglas)
    for (const auto &a : rings_of(c.config))
      for (std::size_t s = 0; s < c.config.samples; ++s) {
        auto x = sample_mc(l, a, rng);
        auto g = sample_tensor(l, a, 0, rng);
        c.expect(mc_check(x) && mc_check(exp_action(g, x)), "e^a * x left MC on " + tag(name, *a));
      }
}

void obstruction_completeness(Ctx &c, Lcg &rng) {
  for (const char *name : {"QOBS", "CPLX2"}) {
    auto l = fixtures::dgla(name);
    for (const char *ring : {"t3", "xy"}) {
      auto a = fixtures::ring(ring);
      auto tower = small_extension_tower(a);
      for (std::size_t s = 0; s < c.config.samples; ++s) {
        TensorElement x = TensorElement::zero(l, tower.back().quotient, 1);
        for (auto it = tower.rbegin(); it != tower.rend(); ++it) {
          const SmallExtension &e = *it;
          auto ob = obstruction_of_lift(x, e);
          const bool brute = brute_force_liftable(x, e);
          c.expect(brute == ob.is_zero(), fmt::format("{} over {}: class zero = {}, brute force = {}", name, ring,
                                                      ob.is_zero(), brute));
          auto fam = lift_family(x, e);
          if (!fam)
            break;
          TensorElement next = fam->particular;
          for (const auto &d : fam->directions)
            next = next + TensorElement{l, e.total, 1, Scalar(rng.coeff()) * d};
          x = next;
        }
      }
    }
  }
}

void primary_obstruction_check(Ctx &c, Lcg &) {
  auto t3 = fixtures::t3();
  const SmallExtension e = small_extension_tower(t3).front(); // t3 -> t2
  for (const auto &[name, l] : c.config.dglas) {
    const auto &h = cohomology(*l);
    if (!h.has(1) || (l->dim(2) > 0 && !h.has(2))) {
      ++c.result.skipped;
      continue;
    }
    for (const auto &xi : h.at(1).z.vectors()) {
      auto x = TensorElement::pure(l, e.quotient, 1, xi, {1});
      auto ob = obstruction_of_lift(x, e);
      Vec primary = primary_obstruction(*l, xi);
      Vec got = ob.coords.cols() ? ob.coords.column(0) : Vec{};
      // M is spanned by t^2 and the lift of ξ⊗t has residual ½[ξ,ξ]⊗t^2
      c.expect(got == primary, name + ": obstruction differs from the class of ½[ξ,ξ]");
    }
  }
}

void tangent_identities(Ctx &c, Lcg &) {
  for (const auto &[name, l] : c.config.dglas) {
    const auto &h = cohomology(*l);
    if (!h.has(1)) {
      ++c.result.skipped;
      continue;
    }
    const auto &h1 = h.at(1);
    c.expect(mc_tangent(*l) == h1.z, name + ": t_MC != Z^1");
    c.expect(tangent_action_image(l) == h1.b, name + ": tangent action image != B^1");
    c.expect(def_tangent(*l).dim_h() == h1.z.dim() - h1.b.dim(), name + ": dim t_Def != dim Z^1 - dim B^1");
    c.expect(tangent_difference_image(l) == h1.b, name + ": image(v1 - v0) != B^1");
  }
}

void hodge_identities(Ctx &c, Lcg &) {
  for (const auto &[name, l] : c.config.dglas) {
    auto s = build_hodge_split(l);
    for (int deg : s->degrees()) {
      if ((l->dim(deg - 1) > 0 && !s->has(deg - 1) && l->d_defined(deg - 1)) ||
          (l->dim(deg + 1) > 0 && !s->has(deg + 1))) {
        ++c.result.skipped;
        continue;
      }
      const std::size_t n = l->dim(deg);
      const Matrix &hp = s->h_proj(deg);
      c.expect(hp * hp == hp, fmt::format("{}: H^2 != H in degree {}", name, deg));
      const bool d_in = l->dim(deg - 1) > 0 && l->space().in_window(deg - 1) && l->d_defined(deg - 1);
      const bool d_out = l->space().in_window(deg + 1) && l->d_defined(deg);
      if (!d_out && l->dim(deg + 1) > 0) {
        ++c.result.skipped;
        continue;
      }
      Matrix lhs(n, n);
      if (d_in)
        lhs = lhs + l->d_block(deg - 1) * s->delta(deg);
      if (d_out && l->dim(deg + 1) > 0)
        lhs = lhs + s->delta(deg + 1) * l->d_block(deg);
      c.expect(lhs == Matrix::identity(n) - hp, fmt::format("{}: dδ + δd != Id - H in degree {}", name, deg));
      if (d_in && s->has(deg - 1))
        c.expect((s->delta(deg - 1) * s->delta(deg)).is_zero() || l->dim(deg - 2) == 0,
                 fmt::format("{}: δδ != 0 in degree {}", name, deg));
      if (d_out && l->dim(deg + 1) > 0) {
        const Matrix &d = l->d_block(deg);
        c.expect(d * s->delta(deg + 1) * d == d, fmt::format("{}: dδd != d in degree {}", name, deg));
      }
    }
  }
}

void kuranishi_round_trips(Ctx &c, Lcg &rng) {
  for (const auto &[name, l] : c.config.dglas) {
    if (!has_split(l, {1, 2})) {
      ++c.result.skipped;
      continue;
    }
    auto s = build_hodge_split(l);
    for (const auto &a : rings_of(c.config))
      for (std::size_t k = 0; k < c.config.samples; ++k) {
        auto x = sample_tensor(l, a, 1, rng);
        c.expect(kuranishi_F(kuranishi_F_inverse(x)) == x && kuranishi_F_inverse(kuranishi_F(x)) == x,
                 "F and F^{-1} are not inverse on " + tag(name, *a));
        auto m = gauge_normalize(sample_mc(l, a, rng)).normal;
        c.expect(kur_to_mc(mc_to_kur(m)) == m, "kur_to_mc ∘ mc_to_kur != id on " + tag(name, *a));
        TensorElement y = TensorElement::zero(l, a, 1);
        for (const auto &v : s->h(1).vectors())
          y = y + TensorElement::pure(l, a, 1, v, rng.vec(a->dim_m()));
        if (kur_membership(y))
          c.expect(mc_to_kur(kur_to_mc(y)) == y, "mc_to_kur ∘ kur_to_mc != id on " + tag(name, *a));
      }
  }
}

void kuranishi_presentation(Ctx &c, Lcg &rng) {
  auto q = fixtures::qobs();
  for (int order = 2; order <= 8; ++order) {
    auto tm = kuranishi_polynomials(q, order);
    c.expect(tm.q.size() == 1 && tm.q[0] == std::map<Monomial, Scalar>{{{2}, Scalar(1)}},
             fmt::format("QOBS: q != u^2 at order {}", order));
  }
  auto tm = kuranishi_polynomials(q, 4);
  for (const char *ring : {"eps", "t3", "t4"}) {
    auto a = fixtures::ring(ring);
    for (std::size_t k = 0; k < c.config.samples; ++k) {
      Vec u = rng.vec(a->dim_m());
      auto x = TensorElement::pure(q, a, 1, {1}, u);
      auto val = evaluate_truncated_map(tm, *a, {u});
      c.expect(is_zero(val[0]) == kur_membership(x), fmt::format("QOBS over {}: q-membership disagrees", ring));
    }
  }
}

void homotopy_round_trip(Ctx &c, Lcg &rng) {
  for (const auto &[name, l] : c.config.dglas)
    for (const auto &a : rings_of(c.config))
      for (std::size_t k = 0; k < c.config.homotopy_samples; ++k) {
        auto x = sample_mc(l, a, rng);
        auto g = sample_tensor(l, a, 0, rng);
        auto y = exp_action(g, x);
        auto w = homotopy_from_gauge(g, x, y);
        auto g2 = gauge_from_homotopy(w);
        c.expect(exp_action(g2, x) == y, "gauge from homotopy does not reach y on " + tag(name, *a));
      }
}

void morphism_criterion_checker(Ctx &c, Lcg &) {
  for (const auto &[name, l] : c.config.dglas) {
    const auto &h = cohomology(*l);
    c.expect(morphism_report(identity_morphism(l)).verdict == MorphismVerdict::Isomorphism,
             name + ": identity is not reported as an isomorphism");
    if (!h.has(1) || (l->dim(2) > 0 && !h.has(2)) || (l->dim(0) > 0 && !h.has(0))) {
      ++c.result.skipped;
      continue;
    }
    auto rep = morphism_report(truncate_positive(l));
    c.expect(rep.verdict != MorphismVerdict::Inconclusive, name + ": truncation inclusion not étale");
    c.expect((rep.verdict == MorphismVerdict::Isomorphism) == h0_vanishes(*l),
             name + ": isomorphism verdict disagrees with H^0 = 0");
  }
}

void fibred_product_identity(Ctx &c, Lcg &) {
  auto ex = build_truncated_poly({"x"}, std::vector<std::string>{"x^2"});
  auto ey = build_truncated_poly({"y"}, std::vector<std::string>{"y^2"});
  auto fp = fibred_product(augmentation(ex), augmentation(ey));
  auto target = fixtures::xy_square();
  // x ↦ (x; 0), y ↦ (0; y)
  AlgebraMorphism p{target, ex, Matrix{{1, 0}}}, q{target, ey, Matrix{{0, 1}}};
  auto h = mediating_morphism(fp, p, q);
  validate_morphism(h);
  c.expect(is_isomorphism(h), "mediating morphism is not an isomorphism");
  c.expect(compose(fp.to_b, h).matrix == p.matrix && compose(fp.to_c, h).matrix == q.matrix,
           "mediating morphism does not commute with the projections");
}

void decision_soundness(Ctx &c, Lcg &rng) {
  auto record = [&](const EquivalenceDecision &d, const TensorElement &x, const TensorElement &y,
                    const std::string &where) {
    if (d.verdict == Verdict::Equivalent)
      c.expect(d.witness && exp_action(*d.witness, x) == y, where + ": Equivalent without a verified witness");
    if (d.verdict == Verdict::NotEquivalent)
      c.expect(d.complete, where + ": NotEquivalent outside complete mode");
  };
  {
    auto q = fixtures::qobs();
    auto t3 = fixtures::t3();
    auto x = TensorElement::pure(q, t3, 1, {1}, {0, 1});
    auto d = gauge_equivalent(x, TensorElement::zero(q, t3, 1));
    c.expect(d.verdict == Verdict::NotEquivalent, "QOBS e⊗t^2 vs 0 is not NotEquivalent");
    record(d, x, TensorElement::zero(q, t3, 1), "QOBS");
  }
  {
    auto d2 = fixtures::d2();
    auto eps = fixtures::eps();
    auto x = TensorElement::pure(d2, eps, 1, {1}, {1});
    auto d = gauge_equivalent(x, TensorElement::zero(d2, eps, 1));
    c.expect(d.verdict == Verdict::Equivalent, "D2 u⊗ε vs 0 is not Equivalent");
    record(d, x, TensorElement::zero(d2, eps, 1), "D2");
  }
  for (const auto &[name, l] : c.config.dglas) {
    if (!has_split(l, {0, 1, 2})) {
      ++c.result.skipped;
      continue;
    }
    for (const char *ring : {"t3", "xy", "x2y2"}) {
      auto a = fixtures::ring(ring);
      for (int k = 0; k < 5; ++k) {
        auto x = sample_mc(l, a, rng);
        auto y = exp_action(sample_tensor(l, a, 0, rng), x);
        auto d = gauge_equivalent(x, y);
        record(d, x, y, tag(name, *a));
        if (d.complete)
          c.expect(d.verdict == Verdict::Equivalent, tag(name, *a) + ": gauge pair not recognised");
        auto z = sample_mc(l, a, rng);
        record(gauge_equivalent(x, z), x, z, tag(name, *a));
      }
    }
  }
}

// -- extra properties run by `suite` ----------------------------------------

void group_laws(Ctx &c, Lcg &rng) {
  for (const auto &[name, l] : c.config.dglas)
    for (const auto &a : rings_of(c.config))
      for (int k = 0; k < 5; ++k) {
        auto x = sample_mc(l, a, rng);
        auto g = sample_tensor(l, a, 0, rng), h = sample_tensor(l, a, 0, rng);
        c.expect(exp_action(TensorElement::zero(l, a, 0), x) == x, "e^0 acts nontrivially on " + tag(name, *a));
        c.expect(exp_action(g, exp_action(h, x)) == exp_action(bch(g, h), x),
                 "action is not compatible with BCH on " + tag(name, *a));
      }
}

void envelope_agreement(Ctx &c, Lcg &rng) {
  for (const auto &[name, l] : c.config.dglas) {
    if (l->dim(0) == 0 || (l->open_top() && l->lo() < 0)) {
      ++c.result.skipped;
      continue;
    }
    Envelope env;
    try {
      env = envelope_for(l);
    } catch (const Error &) {
      ++c.result.skipped;
      continue;
    }
    for (const char *ring : {"eps", "t3", "x2y2"}) {
      auto a = fixtures::ring(ring);
      for (int k = 0; k < 3; ++k)
        c.expect(pga_agrees(env, sample_tensor(l, a, 0, rng), sample_tensor(l, a, 1, rng)),
                 "polarized gauge action disagrees on " + tag(name, *a));
    }
  }
}

void normal_form_canonicity(Ctx &c, Lcg &rng) {
  for (const auto &[name, l] : c.config.dglas) {
    if (!has_split(l, {1, 2})) {
      ++c.result.skipped;
      continue;
    }
    for (const auto &a : rings_of(c.config))
      for (int k = 0; k < 5; ++k) {
        auto x = sample_mc(l, a, rng);
        auto nf = gauge_normalize(x);
        c.expect(exp_action(nf.gauge, x) == nf.normal, "normalization gauge is wrong on " + tag(name, *a));
        if (h0_vanishes(*l)) {
          auto y = exp_action(sample_tensor(l, a, 0, rng), x);
          c.expect(gauge_normalize(y).normal == nf.normal, "normal forms differ along an orbit on " + tag(name, *a));
        }
      }
  }
}

void ode_uniqueness(Ctx &c, Lcg &rng) {
  for (const auto &[name, l] : c.config.dglas) {
    if (l->dim(0) == 0) {
      ++c.result.skipped;
      continue;
    }
    for (const char *ring : {"t3", "t4", "x2y2"}) {
      auto a = fixtures::ring(ring);
      const int cap = default_path_cap(*a, 1);
      PolyPath b = PolyPath::zero(l, a, 0, cap);
      for (int k = 0; k <= 1; ++k)
        b = b + PolyPath::monomial(sample_tensor(l, a, 0, rng), k, cap);
      auto p = solve_gauge_ode(b);
      auto q = solve_gauge_ode(b, PolyPath::monomial(sample_tensor(l, a, 0, rng), 1, cap));
      c.expect(p == q, "gauge ODE solution depends on the starting lift on " + tag(name, *a));
      c.expect(p.derivative() + bch_gamma(p) == b, "gauge ODE solution fails re-substitution on " + tag(name, *a));
    }
  }
}

struct Entry {
  const char *id;
  const char *name;
  double budget;
  void (*fn)(Ctx &, Lcg &);
};

const Entry kAcceptance[] = {
    {"axioms", "Axiom suite on fixtures, L_d extensions and L ⊗ m_A", 10, axioms},
    {"gauge-stability", "Gauge action preserves Maurer-Cartan elements", 30, gauge_stability},
    {"obstruction-completeness", "Obstruction class vanishes iff an affine lift exists", 10,
     obstruction_completeness},
    {"primary-obstruction", "Obstruction over t^3 -> t^2 is the class of ½[ξ,ξ]", 0, primary_obstruction_check},
    {"tangent-identities", "t_MC = Z^1, t_Def = H^1, image(v1 - v0) = B^1", 0, tangent_identities},
    {"hodge-identities", "dδ + δd = Id - H and companions", 0, hodge_identities},
    {"kuranishi-round-trips", "F, F^{-1}, mc_to_kur and kur_to_mc round trips", 30, kuranishi_round_trips},
    {"kuranishi-presentation", "q(u) = u^2 for QOBS and q-membership = Kur membership", 0, kuranishi_presentation},
    {"homotopy-round-trip", "Gauge -> homotopy -> gauge reaches the same endpoint", 60, homotopy_round_trip},
    {"morphism-criterion", "Truncation inclusion étale, isomorphism iff H^0 = 0", 0, morphism_criterion_checker},
    {"fibred-product", "K[x]/(x^2) ×_K K[y]/(y^2) ≅ K[x,y]/(x^2,xy,y^2)", 0, fibred_product_identity},
    {"decision-soundness", "Equivalence verdicts are certified", 0, decision_soundness},
};

const Entry kExtra[] = {
    {"group-laws", "Gauge action is a group action through BCH", 0, group_laws},
    {"envelope-agreement", "Polarized-algebra gauge action matches the exponential action", 0, envelope_agreement},
    {"normal-forms", "Normalization witnesses and orbit canonicity when H^0 = 0", 0, normal_form_canonicity},
    {"gauge-ode", "Gauge ODE solution is unique", 0, ode_uniqueness},
};

} // namespace

SuiteConfig with_defaults(SuiteConfig config) {
  if (config.dglas.empty())
    for (const auto &n : fixtures::dgla_names())
      config.dglas.emplace_back(n, fixtures::dgla(n));
  if (config.rings.empty())
    config.rings = fixtures::ring_names();
  return config;
}

std::vector<CheckResult> run_acceptance(const SuiteConfig &config_in) {
  const SuiteConfig config = with_defaults(config_in);
  std::vector<CheckResult> out;
  std::size_t i = 0;
  for (const auto &e : kAcceptance)
    out.push_back(run_check(config, i++, e.id, e.name, e.budget, e.fn));
  return out;
}

std::vector<CheckResult> run_suite(const SuiteConfig &config_in) {
  SuiteConfig config = with_defaults(config_in);
  std::vector<CheckResult> out;
  // validation stage
  std::vector<NamedDgla> valid;
  for (const auto &[name, l] : config.dglas) {
    CheckResult r;
    r.id = "validate:" + name;
    r.name = "DGLA axioms for " + name;
    auto rep = validate_dgla(*l, 1);
    r.cases = rep.checked;
    r.skipped = rep.skipped;
    if (rep.passed()) {
      r.detail = fmt::format("{} identities checked", rep.checked);
      valid.emplace_back(name, l);
    } else {
      const auto &v = rep.violations.front();
      r.passed = false;
      r.detail = v.identity + " fails at (";
      for (std::size_t k = 0; k < v.tuple.size(); ++k)
        r.detail += (k ? ", " : "") + v.tuple[k];
      r.detail += ")" + (v.detail.empty() ? "" : ": " + v.detail);
    }
    out.push_back(std::move(r));
  }
  config.dglas = valid;
  if (valid.empty())
    return out;
  std::size_t i = 0;
  for (const auto &e : kAcceptance)
    out.push_back(run_check(config, i++, e.id, e.name, 0, e.fn));
  for (const auto &e : kExtra)
    out.push_back(run_check(config, i++, e.id, e.name, 0, e.fn));
  return out;
}

} // namespace dgla

// dglawb: command-line workbench over the dgla library.
//
// Exit codes: 0 pass / decided, 1 error or failed check, 2 Unknown.

#include "dgla/bch.hpp"
#include "dgla/builders.hpp"
#include "dgla/fixtures.hpp"
#include "dgla/io.hpp"
#include "dgla/suite.hpp"
#include "dgla/tensor.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>

using namespace dgla;
using io::Json;

namespace {

struct Options {
  std::string dgla = "builtin:QOBS";
  std::string ring = "t3";
  std::string format = "json";
  bool timing = false;

  std::string element, x, y, g, a, b, path, anchor, morphism, at = "1";
  std::size_t extension = 0;
  int order = 6;
  int coeff_range = 1;
  std::size_t max_candidates = 64;
  std::uint64_t seed = 1;
  std::size_t samples = 100, homotopy_samples = 50;
  std::vector<std::string> suite_dglas, suite_rings;
  bool tensor = false;
};

struct Report {
  Json result = Json::object();
  std::vector<std::string> text; // lines for --format text
  int exit = 0;
  bool raw = false; // print `result` alone (export)
};

struct Inputs {
  Json json = Json::object();
  void add(const std::string &key, Json value) { json[key] = std::move(value); }
};

std::string cell(const Json &j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::string matrix_text(const Matrix &m) {
  std::vector<std::string> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<std::string> row;
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(to_string(m(r, c)));
    rows.push_back("[" + fmt::format("{}", fmt::join(row, " ")) + "]");
  }
  return rows.empty() ? "[]" : fmt::format("{}", fmt::join(rows, " "));
}

Json extension_json(const SmallExtension &e, std::size_t index) {
  Json j;
  j["index"] = index;
  j["total"] = e.total->name();
  j["quotient"] = e.quotient->name();
  Json kernel = Json::array();
  for (const auto &v : e.ideal.vectors())
    kernel.push_back(io::to_json(v));
  j["kernel"] = kernel;
  return j;
}

SmallExtension tower_step(const ArtinPtr &a, std::size_t k) {
  auto tower = small_extension_tower(a);
  if (k >= tower.size())
    throw Error(fmt::format("--extension {} out of range: {} has {} small extensions", k, a->name(), tower.size()));
  return tower[k];
}

class Workbench {
public:
  explicit Workbench(Options &o) : o_(o) {}

  DglaPtr l() {
    if (!l_) {
      l_ = io::load_dgla(o_.dgla);
      inputs_.add("dgla", io::dgla_to_json(*l_));
    }
    return l_;
  }
  ArtinPtr ring() {
    if (!a_) {
      a_ = io::load_ring(o_.ring);
      inputs_.add("ring", io::ring_to_json(*a_));
    }
    return a_;
  }
  TensorElement element(const char *key, const std::string &src, int degree, const ArtinPtr &a) {
    if (src.empty())
      throw Error(fmt::format("--{} is required", key));
    auto x = io::load_element(src, l(), a, degree);
    inputs_.add(key, io::element_to_json(x));
    return x;
  }
  TensorElement element(const char *key, const std::string &src, int degree) {
    return element(key, src, degree, ring());
  }
  OmegaElement omega(const ArtinPtr &a) {
    if (o_.path.empty())
      throw Error("--path is required");
    auto w = io::load_omega(o_.path, l(), a);
    inputs_.add("path", io::omega_to_json(w));
    return w;
  }
  void param(const std::string &key, Json v) { inputs_.add(key, std::move(v)); }
  const Inputs &inputs() const { return inputs_; }

  // -- commands --------------------------------------------------------------

  Report validate() {
    auto rep = validate_dgla(*l());
    Report r;
    r.result["passed"] = rep.passed();
    r.result["checked"] = rep.checked;
    r.result["skipped"] = rep.skipped;
    Json vs = Json::array();
    for (const auto &v : rep.violations)
      vs.push_back({{"identity", v.identity}, {"tuple", v.tuple}, {"detail", v.detail}});
    r.result["violations"] = vs;
    r.text.push_back(fmt::format("{}: {} ({} identities checked, {} tuples outside the window)", l()->name(),
                                 rep.passed() ? "pass" : "FAIL", rep.checked, rep.skipped));
    for (const auto &v : rep.violations)
      r.text.push_back(fmt::format("  {} fails at ({}) {}", v.identity, fmt::join(v.tuple, ", "), v.detail));
    r.exit = rep.passed() ? 0 : 1;
    return r;
  }

  Report cohomology_cmd() {
    Report r;
    r.result = io::cohomology_to_json(*l());
    for (const auto &[deg, e] : r.result.items()) {
      if (e.contains("computable"))
        r.text.push_back(fmt::format("H^{}: not computable inside the window", deg));
      else
        r.text.push_back(fmt::format("H^{}: dim {} (Z {}, B {})", deg, cell(e["dim_h"]), cell(e["dim_z"]),
                                     cell(e["dim_b"])));
    }
    return r;
  }

  Report export_cmd() {
    Report r;
    r.raw = true;
    if (o_.tensor) {
      r.result = io::dgla_to_json(*tensor_nilpotent(*l(), *ring()));
    } else if (!o_.dgla.empty()) {
      r.result = io::dgla_to_json(*l());
    } else {
      r.result = io::ring_to_json(*ring());
    }
    r.text.push_back(r.result.dump(2));
    return r;
  }

  Report mc_check() {
    auto x = element("element", o_.element, 1);
    auto res = mc_residual(x);
    Report r;
    r.result["mc"] = res.is_zero();
    r.result["residual"] = io::element_to_json(res);
    r.text.push_back(fmt::format("Maurer-Cartan: {}", res.is_zero() ? "yes" : "no"));
    r.text.push_back("residual: " + io::element_to_text(res));
    return r;
  }

  Report mc_residual_cmd() {
    auto res = mc_residual(element("element", o_.element, 1));
    Report r;
    r.result["residual"] = io::element_to_json(res);
    r.text.push_back(io::element_to_text(res));
    return r;
  }

  Report mc_tangent_cmd() {
    auto t = mc_tangent(*l());
    Report r;
    Json basis = Json::array();
    for (const auto &v : t.vectors())
      basis.push_back(io::to_json(v));
    r.result["dim"] = t.dim();
    r.result["basis"] = basis;
    auto sm = smoothness_diagnostics(*l());
    r.result["smoothness_sufficient"] = sm.sufficient();
    r.text.push_back(fmt::format("t_MC = Z^1, dimension {}", t.dim()));
    for (const auto &v : t.vectors())
      r.text.push_back("  " + io::to_json(v).dump());
    r.text.push_back(fmt::format("sufficient condition for smoothness: {}", sm.sufficient() ? "holds" : "fails"));
    return r;
  }

  Report mc_obstruct() {
    auto e = tower_step(ring(), o_.extension);
    param("extension", o_.extension);
    auto x = element("element", o_.element, 1, e.quotient);
    auto ob = obstruction_of_lift(x, e);
    Report r;
    r.result["extension"] = extension_json(e, o_.extension);
    r.result["zero"] = ob.is_zero();
    r.result["class"] = io::to_json(ob.coords);
    r.result["cocycle"] = io::to_json(ob.cocycle);
    r.text.push_back(fmt::format("{} -> {}: obstruction {}", e.total->name(), e.quotient->name(),
                                 ob.is_zero() ? "vanishes" : "is nonzero"));
    r.text.push_back("class in H^2 ⊗ M: " + matrix_text(ob.coords));
    return r;
  }

  Report mc_lift() {
    auto e = tower_step(ring(), o_.extension);
    param("extension", o_.extension);
    auto x = element("element", o_.element, 1, e.quotient);
    auto fam = lift_family(x, e);
    Report r;
    r.result["extension"] = extension_json(e, o_.extension);
    r.result["liftable"] = fam.has_value();
    if (fam) {
      r.result["lift"] = io::element_to_json(fam->particular);
      r.result["free_directions"] = fam->directions.size();
      r.text.push_back("lift: " + io::element_to_text(fam->particular));
      r.text.push_back(fmt::format("free directions: {}", fam->directions.size()));
    } else {
      r.text.push_back("no lift: the obstruction class is nonzero");
    }
    return r;
  }

  Report gauge_act() {
    auto g = element("g", o_.g, 0);
    auto x = element("x", o_.x, 1);
    auto y = exp_action(g, x);
    Report r;
    r.result["result"] = io::element_to_json(y);
    r.result["mc"] = dgla::mc_check(y);
    r.text.push_back(io::element_to_text(y));
    return r;
  }

  Report gauge_bch() {
    auto a = element("a", o_.a, 0);
    auto b = element("b", o_.b, 0);
    auto c = bch(a, b);
    Report r;
    r.result["result"] = io::element_to_json(c);
    r.text.push_back(io::element_to_text(c));
    return r;
  }

  Report gauge_equiv() {
    auto x = element("x", o_.x, 1);
    auto y = element("y", o_.y, 1);
    SearchBudget budget{o_.coeff_range, o_.max_candidates};
    param("coeff_range", o_.coeff_range);
    param("max_candidates", o_.max_candidates);
    auto d = gauge_equivalent(x, y, budget);
    Report r;
    r.result["verdict"] = to_string(d.verdict);
    r.result["complete"] = d.complete;
    r.result["witness"] = d.witness ? io::element_to_json(*d.witness) : Json(nullptr);
    if (d.verdict == Verdict::NotEquivalent) {
      r.result["level"] = d.level;
      r.result["h1_difference"] = io::to_json(d.h1_difference);
    }
    if (!d.diagnostic.empty())
      r.result["diagnostic"] = d.diagnostic;
    r.text.push_back(fmt::format("verdict: {}{}", to_string(d.verdict), d.complete ? " (complete)" : ""));
    if (d.witness)
      r.text.push_back("witness: " + io::element_to_text(*d.witness));
    if (d.verdict == Verdict::NotEquivalent)
      r.text.push_back(fmt::format("differs at level {}: {}", d.level, matrix_text(d.h1_difference)));
    if (!d.diagnostic.empty())
      r.text.push_back(d.diagnostic);
    r.exit = d.verdict == Verdict::Unknown ? 2 : 0;
    return r;
  }

  Report gauge_report() {
    auto f = io::load_morphism(o_.morphism.empty() ? "truncation:" + o_.dgla : o_.morphism);
    param("morphism", io::morphism_to_json(f));
    auto rep = morphism_report(f);
    Report r;
    r.result["verdict"] = to_string(rep.verdict);
    r.result["h0_surjective"] = rep.h0_surjective;
    r.result["h1_bijective"] = rep.h1_bijective;
    r.result["h2_injective"] = rep.h2_injective;
    Json maps = Json::object(), ranks = Json::object();
    for (const auto &[d, m] : rep.maps)
      maps[std::to_string(d)] = io::to_json(m);
    for (const auto &[d, k] : rep.ranks)
      ranks[std::to_string(d)] = k;
    r.result["maps"] = maps;
    r.result["ranks"] = ranks;
    r.text.push_back(fmt::format("verdict: {}", to_string(rep.verdict)));
    r.text.push_back(fmt::format("H^0 surjective: {}, H^1 bijective: {}, H^2 injective: {}", rep.h0_surjective,
                                 rep.h1_bijective, rep.h2_injective));
    return r;
  }

  Report kuranishi_split() {
    auto s = build_hodge_split(l());
    Report r;
    for (int d : s->degrees()) {
      Json e;
      e["dim_b"] = s->b(d).dim();
      e["dim_h"] = s->h(d).dim();
      e["dim_c"] = s->c(d).dim();
      e["delta"] = io::to_json(s->delta(d));
      e["h_projector"] = io::to_json(s->h_proj(d));
      r.result[std::to_string(d)] = e;
      r.text.push_back(fmt::format("degree {}: B {}, H {}, C {}; δ = {}", d, s->b(d).dim(), s->h(d).dim(),
                                   s->c(d).dim(), matrix_text(s->delta(d))));
    }
    return r;
  }

  Report kuranishi_apply(bool inverse) {
    auto x = element("element", o_.element, 1);
    auto y = inverse ? kuranishi_F_inverse(x) : kuranishi_F(x);
    Report r;
    r.result["result"] = io::element_to_json(y);
    r.text.push_back(io::element_to_text(y));
    return r;
  }

  Report kuranishi_member() {
    auto x = element("element", o_.element, 1);
    Report r;
    const bool h1 = in_h1(x);
    r.result["in_h1"] = h1;
    r.result["member"] = h1 && kur_membership(x);
    r.text.push_back(fmt::format("in H^1 ⊗ m_A: {}", h1 ? "yes" : "no"));
    r.text.push_back(fmt::format("in Kur: {}", r.result["member"].get<bool>() ? "yes" : "no"));
    return r;
  }

  Report kuranishi_normalize() {
    auto nf = gauge_normalize(element("element", o_.element, 1));
    Report r;
    r.result["normal"] = io::element_to_json(nf.normal);
    r.result["gauge"] = io::element_to_json(nf.gauge);
    r.result["kur"] = io::element_to_json(mc_to_kur(nf.normal));
    r.text.push_back("normal form: " + io::element_to_text(nf.normal));
    r.text.push_back("gauge: " + io::element_to_text(nf.gauge));
    return r;
  }

  Report kuranishi_poly() {
    param("order", o_.order);
    auto q = kuranishi_polynomials(l(), o_.order);
    Report r;
    r.result = io::truncated_map_to_json(q);
    for (const auto &[name, poly] : r.result.items()) {
      std::vector<std::string> terms;
      for (const auto &[mono, c] : poly.items())
        terms.push_back(fmt::format("{} u^{}", cell(c), mono));
      r.text.push_back(fmt::format("{} = {}", name, terms.empty() ? "0" : fmt::format("{}", fmt::join(terms, " + "))));
    }
    return r;
  }

  Report homotopy_check() {
    auto w = omega(ring());
    auto rep = mc_omega_check(w);
    Report r;
    r.result["mc"] = rep.ok();
    r.result["pointwise_mc"] = rep.pointwise_mc;
    r.result["flow"] = rep.flow;
    r.result["v0"] = io::element_to_json(evaluate(w, 0));
    r.result["v1"] = io::element_to_json(evaluate(w, 1));
    r.text.push_back(fmt::format("MC in Ω: {} (pointwise {}, flow {})", rep.ok() ? "yes" : "no", rep.pointwise_mc,
                                 rep.flow));
    r.text.push_back("v0: " + io::element_to_text(evaluate(w, 0)));
    r.text.push_back("v1: " + io::element_to_text(evaluate(w, 1)));
    return r;
  }

  Report homotopy_eval() {
    auto w = omega(ring());
    const Scalar s = parse_scalar(o_.at);
    param("at", io::to_json(s));
    Report r;
    r.result["a"] = io::element_to_json(w.a.at(s));
    r.result["b"] = io::element_to_json(w.b.at(s));
    r.text.push_back("a: " + io::element_to_text(w.a.at(s)));
    r.text.push_back("b: " + io::element_to_text(w.b.at(s)));
    return r;
  }

  Report homotopy_from_gauge_cmd() {
    auto g = element("g", o_.g, 0);
    auto x = element("x", o_.x, 1);
    auto y = exp_action(g, x);
    auto w = homotopy_from_gauge(g, x, y);
    Report r;
    r.result["path"] = io::omega_to_json(w);
    r.result["y"] = io::element_to_json(y);
    r.text.push_back("y = " + io::element_to_text(y));
    r.text.push_back("path: " + io::omega_to_json(w).dump());
    return r;
  }

  Report homotopy_to_gauge() {
    auto w = omega(ring());
    auto g = gauge_from_homotopy(w);
    Report r;
    r.result["gauge"] = io::element_to_json(g);
    r.result["verified"] = exp_action(g, evaluate(w, 0)) == evaluate(w, 1);
    r.text.push_back("gauge: " + io::element_to_text(g));
    return r;
  }

  Report homotopy_lift() {
    auto e = tower_step(ring(), o_.extension);
    param("extension", o_.extension);
    auto w = omega(e.quotient);
    auto anchor = element("anchor", o_.anchor, 1, e.total);
    auto lifted = lift_omega(w, e, anchor);
    Report r;
    r.result["extension"] = extension_json(e, o_.extension);
    r.result["path"] = io::omega_to_json(lifted);
    r.text.push_back("path: " + io::omega_to_json(lifted).dump());
    return r;
  }

  Report suite() {
    SuiteConfig c;
    c.seed = o_.seed;
    c.samples = o_.samples;
    c.homotopy_samples = o_.homotopy_samples;
    for (const auto &s : o_.suite_dglas) {
      auto l = io::load_dgla(s);
      c.dglas.emplace_back(l->name().empty() ? s : l->name(), l);
    }
    c.rings = o_.suite_rings;
    param("seed", o_.seed);
    param("samples", o_.samples);
    param("homotopy_samples", o_.homotopy_samples);
    param("dglas", o_.suite_dglas);
    param("rings", o_.suite_rings);
    auto results = run_suite(c);
    Report r;
    Json checks = Json::array();
    bool all = true;
    for (const auto &cr : results) {
      all = all && cr.passed;
      Json j;
      j["id"] = cr.id;
      j["name"] = cr.name;
      j["passed"] = cr.passed;
      j["cases"] = cr.cases;
      j["skipped"] = cr.skipped;
      j["detail"] = cr.detail;
      if (o_.timing)
        j["seconds"] = cr.seconds;
      checks.push_back(j);
      r.text.push_back(fmt::format("{} {:<28} {}", cr.passed ? "PASS" : "FAIL", cr.id, cr.detail));
    }
    r.result["passed"] = all;
    r.result["checks"] = checks;
    r.exit = all ? 0 : 1;
    return r;
  }

private:
  Options &o_;
  DglaPtr l_;
  ArtinPtr a_;
  Inputs inputs_;
};

void emit(const std::string &command, const Report &r, const Workbench &wb, const Options &o, double seconds) {
  if (o.format == "text") {
    for (const auto &line : r.text)
      fmt::print("{}\n", line);
    if (o.timing)
      fmt::print("time: {:.3f} s\n", seconds);
    return;
  }
  if (r.raw) {
    fmt::print("{}\n", r.result.dump(2));
    return;
  }
  Json out;
  out["command"] = command;
  out["inputs_digest"] = io::digest(wb.inputs().json.dump());
  out["result"] = r.result;
  if (o.timing)
    out["seconds"] = seconds;
  fmt::print("{}\n", out.dump(2));
}

// Budget defaults from the environment; command-line flags override them.
template <class T> void env_default(const char *name, T &target, long long min) {
  const char *v = std::getenv(name);
  if (v == nullptr)
    return;
  try {
    std::size_t pos = 0;
    const long long n = std::stoll(v, &pos);
    if (pos == std::string(v).size() && n >= min) {
      target = static_cast<T>(n);
      return;
    }
  } catch (const std::exception &) {
  }
  throw Error(fmt::format("{}={} must be an integer ≥ {}", name, v, min));
}

} // namespace

int main(int argc, char **argv) {
  Options o;
  try {
    env_default("DGLAWB_POLY_ORDER", o.order, 1);
    env_default("DGLAWB_COEFF_RANGE", o.coeff_range, 1);
    env_default("DGLAWB_MAX_CANDIDATES", o.max_candidates, 1);
    env_default("DGLAWB_SEED", o.seed, 0);
    env_default("DGLAWB_SAMPLES", o.samples, 1);
    env_default("DGLAWB_HOMOTOPY_SAMPLES", o.homotopy_samples, 1);
  } catch (const Error &e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  CLI::App app{"dglawb: exact workbench for differential graded Lie algebras"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  std::string command;
  std::function<Report(Workbench &)> run;

  auto common = [&](CLI::App *c, bool with_ring) {
    c->add_option("--dgla", o.dgla, "builtin:NAME, a DGLA JSON file, or inline JSON");
    if (with_ring)
      c->add_option("--ring", o.ring, "builtin ring name, relations like \"t^3\", JSON or a file");
    c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    c->add_flag("--timing", o.timing, "include wall-clock time in the output");
  };
  auto leaf = [&](CLI::App *parent, const std::string &name, const std::string &help, bool with_ring,
                  std::function<Report(Workbench &)> fn) {
    auto *c = parent->add_subcommand(name, help);
    common(c, with_ring);
    const std::string full = parent == &app ? name : parent->get_name() + " " + name;
    c->callback([&, full, fn] {
      command = full;
      run = fn;
    });
    return c;
  };
  auto group = [&](const std::string &name, const std::string &help) {
    auto *c = app.add_subcommand(name, help);
    c->require_subcommand(1);
    return c;
  };
  const CLI::Range positive(1, 1 << 30);

  leaf(&app, "validate", "check the DGLA axioms on every basis tuple", false, [](Workbench &w) { return w.validate(); });
  leaf(&app, "cohomology", "cohomology dimensions and representatives", false,
       [](Workbench &w) { return w.cohomology_cmd(); });
  {
    auto *c = leaf(&app, "export", "print the DGLA (or ring, or L ⊗ m_A) as schema JSON", true,
                   [](Workbench &w) { return w.export_cmd(); });
    c->add_flag("--tensor", o.tensor, "export L ⊗ m_A as a DGLA");
  }

  auto *mc = group("mc", "Maurer-Cartan elements and obstructions");
  leaf(mc, "check", "is the element Maurer-Cartan", true, [](Workbench &w) { return w.mc_check(); })
      ->add_option("--element", o.element, "element of L^1 ⊗ m_A");
  leaf(mc, "residual", "dx + ½[x,x]", true, [](Workbench &w) { return w.mc_residual_cmd(); })
      ->add_option("--element", o.element, "element of L^1 ⊗ m_A");
  leaf(mc, "tangent", "the tangent space Z^1", false, [](Workbench &w) { return w.mc_tangent_cmd(); });
  for (const char *name : {"obstruct", "lift"}) {
    const bool obstruct = std::string(name) == "obstruct";
    auto *c = leaf(mc, name, obstruct ? "obstruction class of lifting along a small extension" : "lift along a small extension",
                   true, [obstruct](Workbench &w) { return obstruct ? w.mc_obstruct() : w.mc_lift(); });
    c->add_option("--element", o.element, "element over the quotient ring of the step");
    c->add_option("--extension", o.extension, "index in the small-extension tower (0 = top step)");
  }

  auto *gauge = group("gauge", "gauge action and equivalence");
  {
    auto *c = leaf(gauge, "act", "e^g * x", true, [](Workbench &w) { return w.gauge_act(); });
    c->add_option("--g", o.g, "element of L^0 ⊗ m_A");
    c->add_option("--x", o.x, "element of L^1 ⊗ m_A");
  }
  {
    auto *c = leaf(gauge, "bch", "Baker-Campbell-Hausdorff product", true, [](Workbench &w) { return w.gauge_bch(); });
    c->add_option("--a", o.a, "element of L^0 ⊗ m_A");
    c->add_option("--b", o.b, "element of L^0 ⊗ m_A");
  }
  {
    auto *c = leaf(gauge, "equiv", "decide gauge equivalence", true, [](Workbench &w) { return w.gauge_equiv(); });
    c->add_option("--x", o.x, "element of L^1 ⊗ m_A");
    c->add_option("--y", o.y, "element of L^1 ⊗ m_A");
    c->add_option("--coeff-range", o.coeff_range, "witness search coefficient range")
        ->check(positive);
    c->add_option("--max-candidates", o.max_candidates, "witness search candidates per level")
        ->check(positive);
  }
  leaf(gauge, "report", "étale / isomorphism report for a DGLA morphism", false,
       [](Workbench &w) { return w.gauge_report(); })
      ->add_option("--morphism", o.morphism, "identity:SRC, truncation:SRC, zero:SRC, JSON or a file");

  auto *kur = group("kuranishi", "Hodge split and Kuranishi map");
  leaf(kur, "split", "Hodge splitting data", false, [](Workbench &w) { return w.kuranishi_split(); });
  leaf(kur, "map", "F(x) = x + ½ δ[x,x]", true, [](Workbench &w) { return w.kuranishi_apply(false); })
      ->add_option("--element", o.element, "element of L^1 ⊗ m_A");
  leaf(kur, "inverse", "F^{-1}(y)", true, [](Workbench &w) { return w.kuranishi_apply(true); })
      ->add_option("--element", o.element, "element of L^1 ⊗ m_A");
  leaf(kur, "member", "membership in Kur", true, [](Workbench &w) { return w.kuranishi_member(); })
      ->add_option("--element", o.element, "element of H^1 ⊗ m_A");
  leaf(kur, "normalize", "gauge normal form", true, [](Workbench &w) { return w.kuranishi_normalize(); })
      ->add_option("--element", o.element, "Maurer-Cartan element");
  leaf(kur, "poly", "Taylor coefficients of q : H^1 -> H^2", false, [](Workbench &w) { return w.kuranishi_poly(); })
      ->add_option("--order", o.order, "truncation order")
      ->check(positive);

  auto *hom = group("homotopy", "homotopies in L ⊗ Ω ⊗ m_A");
  leaf(hom, "check", "Maurer-Cartan check in Ω", true, [](Workbench &w) { return w.homotopy_check(); })
      ->add_option("--path", o.path, "{\"a\": path, \"b\": path}");
  {
    auto *c = leaf(hom, "eval", "evaluate a(s), b(s)", true, [](Workbench &w) { return w.homotopy_eval(); });
    c->add_option("--path", o.path, "{\"a\": path, \"b\": path}");
    c->add_option("--at", o.at, "rational point s");
  }
  {
    auto *c = leaf(hom, "from-gauge", "homotopy from x to e^g * x", true,
                   [](Workbench &w) { return w.homotopy_from_gauge_cmd(); });
    c->add_option("--g", o.g, "element of L^0 ⊗ m_A");
    c->add_option("--x", o.x, "Maurer-Cartan element");
  }
  leaf(hom, "to-gauge", "gauge from a homotopy", true, [](Workbench &w) { return w.homotopy_to_gauge(); })
      ->add_option("--path", o.path, "{\"a\": path, \"b\": path}");
  {
    auto *c = leaf(hom, "lift", "lift a homotopy along a small extension", true,
                   [](Workbench &w) { return w.homotopy_lift(); });
    c->add_option("--path", o.path, "path over the quotient ring of the step");
    c->add_option("--extension", o.extension, "index in the small-extension tower (0 = top step)");
    c->add_option("--anchor", o.anchor, "lift of v_0 over the total ring");
  }

  {
    auto *c = app.add_subcommand("suite", "seeded property suites over the fixtures");
    c->add_option("--seed", o.seed, "sampling seed");
    c->add_option("--dgla", o.suite_dglas, "DGLA sources (default: every builtin)");
    c->add_option("--ring", o.suite_rings, "builtin ring names (default: all)");
    c->add_option("--samples", o.samples, "samples per fixture × ring")->check(positive);
    c->add_option("--homotopy-samples", o.homotopy_samples, "homotopy samples per fixture × ring")
        ->check(positive);
    c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    c->add_flag("--timing", o.timing, "include wall-clock time in the output");
    c->callback([&] {
      command = "suite";
      run = [](Workbench &w) { return w.suite(); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  // `export --ring R` alone exports the ring
  if (command == "export" && !o.tensor && app.get_subcommand("export")->count("--ring") &&
      !app.get_subcommand("export")->count("--dgla"))
    o.dgla.clear();

  Workbench wb(o);
  try {
    const auto start = std::chrono::steady_clock::now();
    Report r = run(wb);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(command, r, wb, o, seconds);
    return r.exit;
  } catch (const std::exception &e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}

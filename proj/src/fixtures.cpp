#include "dgla/fixtures.hpp"

#include "dgla/builders.hpp"

#include <fmt/format.h>

#include <map>
#include <mutex>

namespace dgla::fixtures {

DglaPtr abel1() {
  DglaBuilder b(GradedSpace(1, {{"u"}}), false, "ABEL1");
  return b.build();
}

DglaPtr d2() {
  DglaBuilder b(GradedSpace(0, {{"c"}, {"u"}}), false, "D2");
  b.set_d(0, 0, 0, 1);
  return b.build();
}

DglaPtr qobs() {
  DglaBuilder b(GradedSpace(1, {{"e"}, {"f"}}), false, "QOBS");
  b.set_bracket(1, 0, 1, 0, 2, 0, 1);
  return b.build();
}

DglaPtr cplx2() { return build_example_J(2, "CPLX2"); }

DglaPtr hw2() {
  ArtinPtr a = build_truncated_poly({"x"}, std::vector<std::string>{"x^2"});
  return build_hochschild_window(unitalization(*a), 3, "HW2");
}

DglaPtr poly() { return build_polyvector(2, 1, "POLY"); }

std::vector<std::string> dgla_names() {
  std::vector<std::string> base{"ABEL1", "D2", "QOBS", "CPLX2", "HW2", "POLY"};
  std::vector<std::string> out = base;
  for (const auto &n : base)
    out.push_back(n + "_d");
  return out;
}

DglaPtr dgla(const std::string &name) {
  static std::mutex mu;
  static std::map<std::string, DglaPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(name); it != cache.end())
    return it->second;
  static const std::map<std::string, DglaPtr (*)()> makers{
      {"ABEL1", abel1}, {"D2", d2}, {"QOBS", qobs}, {"CPLX2", cplx2}, {"HW2", hw2}, {"POLY", poly}};
  DglaPtr out;
  if (auto it = makers.find(name); it != makers.end()) {
    out = it->second();
  } else if (name.size() > 2 && name.substr(name.size() - 2) == "_d") {
    auto base = makers.find(name.substr(0, name.size() - 2));
    if (base == makers.end())
      throw Error(fmt::format("unknown builtin DGLA '{}'", name));
    out = extend_with_d(*base->second());
  } else {
    throw Error(fmt::format("unknown builtin DGLA '{}'", name));
  }
  cache.emplace(name, out);
  return out;
}

ArtinPtr eps() { return build_truncated_poly({"e"}, std::vector<std::string>{"e^2"}); }
ArtinPtr t3() { return build_truncated_poly({"t"}, std::vector<std::string>{"t^3"}); }
ArtinPtr t4() { return build_truncated_poly({"t"}, std::vector<std::string>{"t^4"}); }
ArtinPtr xy_square() { return build_truncated_poly({"x", "y"}, std::vector<std::string>{"x^2", "xy", "y^2"}); }
ArtinPtr x2y2() { return build_truncated_poly({"x", "y"}, std::vector<std::string>{"x^2", "y^2"}); }

std::vector<std::string> ring_names() { return {"eps", "t3", "t4", "xy", "x2y2"}; }

ArtinPtr ring(const std::string &name) {
  static const std::map<std::string, ArtinPtr (*)()> makers{
      {"eps", eps}, {"t3", t3}, {"t4", t4}, {"xy", xy_square}, {"x2y2", x2y2}};
  auto it = makers.find(name);
  if (it == makers.end())
    throw Error(fmt::format("unknown builtin ring '{}'", name));
  return it->second();
}

} // namespace dgla::fixtures

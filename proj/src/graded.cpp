#include "dgla/graded.hpp"

#include <fmt/format.h>

#include <set>

namespace dgla {

GradedSpace::GradedSpace(int lo, std::vector<std::vector<std::string>> labels)
    : lo_(lo), labels_(std::move(labels)) {
  if (labels_.empty())
    throw Error("graded space needs a non-empty window");
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    std::set<std::string> seen(labels_[k].begin(), labels_[k].end());
    if (seen.size() != labels_[k].size())
      throw Error(fmt::format("duplicate basis label in degree {}", lo_ + static_cast<int>(k)));
  }
}

GradedSpace GradedSpace::with_dims(int lo, const std::vector<std::size_t> &dims) {
  std::vector<std::vector<std::string>> labels;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < dims[k]; ++i)
      l.push_back(fmt::format("v{}_{}", lo + static_cast<int>(k), i));
    labels.push_back(std::move(l));
  }
  return GradedSpace(lo, std::move(labels));
}

std::size_t GradedSpace::dim(int deg) const {
  return in_window(deg) ? labels_[static_cast<std::size_t>(deg - lo_)].size() : 0;
}

const std::vector<std::string> &GradedSpace::labels(int deg) const {
  static const std::vector<std::string> empty;
  return in_window(deg) ? labels_[static_cast<std::size_t>(deg - lo_)] : empty;
}

std::size_t GradedSpace::total_dim() const {
  std::size_t n = 0;
  for (const auto &l : labels_)
    n += l.size();
  return n;
}

std::size_t GradedSpace::index_of(int deg, const std::string &label) const {
  const auto &l = labels(deg);
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i] == label)
      return i;
  throw Error(fmt::format("no basis label '{}' in degree {}", label, deg));
}

GradedSpace shift(const GradedSpace &space, int n) {
  std::vector<std::vector<std::string>> labels;
  for (int d = space.lo(); d <= space.hi(); ++d)
    labels.push_back(space.labels(d));
  return GradedSpace(space.lo() - n, std::move(labels));
}

const Matrix &GradedMap::block(int deg) const {
  auto it = blocks.find(deg);
  if (it == blocks.end())
    throw Error(fmt::format("graded map undefined out of degree {}", deg));
  return it->second;
}

GradedMap zero_map(const GradedSpace &space, int shift) {
  GradedMap m{shift, {}};
  for (int d = space.lo(); d <= space.hi(); ++d)
    m.blocks.emplace(d, Matrix(space.dim(d + shift), space.dim(d)));
  return m;
}

bool ComplexReport::passed() const {
  for (const auto &e : entries)
    if (!e.ok)
      return false;
  return true;
}

ComplexReport verify_complex(const GradedSpace &space, const GradedMap &d) {
  if (d.shift != 1)
    throw ShapeError("verify_complex expects a map of degree 1");
  ComplexReport rep;
  for (const auto &[deg, m] : d.blocks) {
    if (m.rows() != space.dim(deg + 1) || m.cols() != space.dim(deg))
      throw ShapeError(fmt::format("differential block out of degree {} has shape {}x{}", deg,
                                   m.rows(), m.cols()));
  }
  for (const auto &[deg, m] : d.blocks) {
    auto next = d.blocks.find(deg + 1);
    if (next == d.blocks.end())
      continue;
    rep.entries.push_back({deg, (next->second * m).is_zero()});
  }
  return rep;
}

const DegreeCohomology &CohomologyData::at(int deg) const {
  auto it = degrees.find(deg);
  if (it == degrees.end())
    throw Error(fmt::format("cohomology not available in degree {}", deg));
  return it->second;
}

std::size_t CohomologyData::dim_h(int deg) const {
  auto it = degrees.find(deg);
  return it == degrees.end() ? 0 : it->second.dim_h();
}

Vec CohomologyData::class_of(int deg, const Vec &z) const {
  const auto &c = at(deg);
  if (!c.z.contains(z))
    throw Error(fmt::format("class_of: vector is not a cocycle in degree {}", deg));
  return c.class_projection * z;
}

CohomologyData cohomology(const GradedSpace &space, const GradedMap &d) {
  if (!verify_complex(space, d).passed())
    throw Error("cohomology: map is not a complex");
  CohomologyData out;
  for (int deg = space.lo(); deg <= space.hi(); ++deg) {
    if (!d.defined(deg))
      continue;
    const std::size_t n = space.dim(deg);
    Subspace b = Subspace::zero(n);
    if (space.dim(deg - 1) > 0) {
      if (!d.defined(deg - 1))
        continue;
      b = image(d.block(deg - 1));
    }
    Subspace z = kernel(d.block(deg));
    Subspace h = complement(b, z);
    Subspace c = complement(z, Subspace::full(n));
    Matrix p = b.basis().hstack(h.basis()).hstack(c.basis());
    Matrix pinv = inverse(p);
    Matrix proj = pinv.row_block(b.dim(), b.dim() + h.dim());
    out.degrees.emplace(deg, DegreeCohomology{std::move(z), std::move(b), std::move(h), std::move(proj)});
  }
  return out;
}

} // namespace dgla

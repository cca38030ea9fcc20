// ℤ-graded vector spaces on a bounded degree window, graded maps and
// cohomology with explicit bases.
#pragma once

#include "dgla/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace dgla {

/// A graded space supported on [lo, hi].  Degrees outside are zero.
class GradedSpace {
public:
  GradedSpace() = default;
  GradedSpace(int lo, std::vector<std::vector<std::string>> labels);
  /// Anonymous basis labels "v<deg>_<k>".
  static GradedSpace with_dims(int lo, const std::vector<std::size_t> &dims);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(labels_.size()) - 1; }
  bool in_window(int deg) const { return deg >= lo() && deg <= hi(); }
  std::size_t dim(int deg) const;
  const std::vector<std::string> &labels(int deg) const;
  std::size_t total_dim() const;
  /// Index of a label in degree deg; throws when absent.
  std::size_t index_of(int deg, const std::string &label) const;

  bool operator==(const GradedSpace &) const = default;

private:
  int lo_ = 0;
  std::vector<std::vector<std::string>> labels_;
};

/// V[n]^i = V^{i+n}
GradedSpace shift(const GradedSpace &space, int n);

/// A map of degree `shift`; blocks[i] : V^i -> V^{i+shift}.  A missing
/// block means the map is not defined out of that degree (open window).
struct GradedMap {
  int shift = 0;
  std::map<int, Matrix> blocks;

  bool defined(int deg) const { return blocks.count(deg) != 0; }
  const Matrix &block(int deg) const;
};

/// Zero map of the given shift with every block present.
GradedMap zero_map(const GradedSpace &space, int shift);

struct ComplexReport {
  struct Entry {
    int degree;
    bool ok;
  };
  std::vector<Entry> entries;
  bool passed() const;
};

/// Checks d_{i+1} d_i = 0 wherever both blocks are defined.
ComplexReport verify_complex(const GradedSpace &space, const GradedMap &d);

struct DegreeCohomology {
  Subspace z;                // cocycles
  Subspace b;                // coboundaries
  Subspace h;                // chosen representatives, complement of B in Z
  Matrix class_projection;   // dim H x dim L^i; kills B, identity on H coords
  std::size_t dim_h() const { return h.dim(); }
};

/// Cohomology on every degree where it is computable.
struct CohomologyData {
  std::map<int, DegreeCohomology> degrees;

  bool has(int deg) const { return degrees.count(deg) != 0; }
  const DegreeCohomology &at(int deg) const;
  /// dim H^deg, zero outside the computed range.
  std::size_t dim_h(int deg) const;
  /// Coordinates of the class of a cocycle; throws when z is not a cocycle.
  Vec class_of(int deg, const Vec &z) const;
};

CohomologyData cohomology(const GradedSpace &space, const GradedMap &d);

} // namespace dgla

// Finite-dimensional differential graded Lie algebras given by structure
// constants on a bounded degree window.
//
// Window policy: a DGLA is either closed (every degree outside the window
// is genuinely zero) or open at the top (it is a truncation of a larger
// algebra).  In the open case, and for individual basis pairs that builders
// mark as leaving a truncation, any evaluation that would need the missing
// data throws WindowError instead of silently returning zero.
#pragma once

#include "dgla/graded.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dgla {

class WindowError : public Error {
public:
  using Error::Error;
};

inline int sign_of(long long e) { return (e % 2 == 0) ? 1 : -1; }

/// Structure constants for one degree pair (i, j): c[(k*dj + l)*dk + m] is
/// the coefficient of basis vector m of L^{i+j} in [e_k, e_l].
struct BracketBlock {
  std::size_t di = 0, dj = 0, dk = 0;
  std::vector<Scalar> c;
  std::vector<char> defined; // per (k, l)
  // sparse view, rebuilt by Dgla after construction
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> sparse;

  BracketBlock() = default;
  BracketBlock(std::size_t di_, std::size_t dj_, std::size_t dk_)
      : di(di_), dj(dj_), dk(dk_), c(di_ * dj_ * dk_), defined(di_ * dj_, 1) {}

  Scalar &at(std::size_t k, std::size_t l, std::size_t m) { return c[(k * dj + l) * dk + m]; }
  const Scalar &at(std::size_t k, std::size_t l, std::size_t m) const {
    return c[(k * dj + l) * dk + m];
  }
  bool is_defined(std::size_t k, std::size_t l) const { return defined[k * dj + l] != 0; }
  void rebuild_sparse();
};

class DglaBuilder;

class Dgla {
public:
  const GradedSpace &space() const { return space_; }
  int lo() const { return space_.lo(); }
  int hi() const { return space_.hi(); }
  std::size_t dim(int deg) const { return space_.dim(deg); }
  const std::vector<std::string> &labels(int deg) const { return space_.labels(deg); }
  bool open_top() const { return open_top_; }
  const std::string &name() const { return name_; }

  // -- differential ---------------------------------------------------------
  bool d_defined(int deg, std::size_t k) const;
  bool d_defined(int deg) const; // on every basis vector of L^deg
  /// Throws WindowError when the argument touches an undefined basis vector.
  Vec d(int deg, const Vec &v) const;
  /// The matrix of d out of `deg` (only when fully defined).
  const Matrix &d_block(int deg) const;
  /// Graded map containing every fully defined block.
  GradedMap differential() const;

  // -- bracket --------------------------------------------------------------
  bool bracket_defined(int i, std::size_t k, int j, std::size_t l) const;
  /// Basis bracket [e_k, e_l] with e_k in L^i, e_l in L^j.
  Vec basis_bracket(int i, std::size_t k, int j, std::size_t l) const;
  Vec bracket(int i, const Vec &a, int j, const Vec &b) const;
  /// Non-throwing variant: false when an undefined pair is touched.
  bool try_bracket(int i, const Vec &a, int j, const Vec &b, Vec &out) const;
  bool try_d(int deg, const Vec &v, Vec &out) const;
  /// Block for (i, j), or nullptr when [L^i, L^j] is identically zero.
  const BracketBlock *block(int i, int j) const;

  bool is_abelian() const;
  bool has_zero_differential() const;

  /// Entries whose declared output degree differs from i+j; only ever
  /// non-empty when a caller feeds malformed data through DglaBuilder.
  struct StrayEntry {
    int i, j, target;
    std::size_t k, l, m;
    Scalar value;
  };
  const std::vector<StrayEntry> &stray_entries() const { return stray_; }

  /// Cohomology of (L, d), computed once.
  const CohomologyData &cohomology() const;

private:
  friend class DglaBuilder;
  Dgla() = default;

  mutable std::once_flag cohomology_once_;
  mutable std::unique_ptr<CohomologyData> cohomology_;

  std::string name_;
  GradedSpace space_;
  bool open_top_ = false;
  std::map<int, Matrix> diff_;                    // block out of degree i
  std::map<int, std::vector<char>> diff_defined_; // per source basis vector
  std::map<std::pair<int, int>, BracketBlock> bracket_;
  std::vector<StrayEntry> stray_;
};

using DglaPtr = std::shared_ptr<const Dgla>;

/// Cohomology of (L, d) in every degree where d is defined on both sides.
const CohomologyData &cohomology(const Dgla &l);

/// Mutable assembly area for a Dgla.  Bracket data may be given in full or
/// for one ordering of each pair only; build() fills the missing ordering
/// with the graded-antisymmetric sign.
class DglaBuilder {
public:
  DglaBuilder(GradedSpace space, bool open_top, std::string name = {});

  const GradedSpace &space() const { return space_; }

  void set_d(int deg, std::size_t k, std::size_t m, const Scalar &value);
  void set_d_block(int deg, const Matrix &block);
  void mark_d_undefined(int deg, std::size_t k);

  /// Coefficient of e_m (in L^{target}) in [e_k, e_l], e_k in L^i, e_l in L^j.
  void set_bracket(int i, std::size_t k, int j, std::size_t l, int target, std::size_t m,
                   const Scalar &value);
  void set_bracket(int i, std::size_t k, int j, std::size_t l, const Vec &value);
  void mark_bracket_undefined(int i, std::size_t k, int j, std::size_t l);

  DglaPtr build(bool symmetrize = true) const;

private:
  BracketBlock *block_for(int i, int j);

  GradedSpace space_;
  bool open_top_;
  std::string name_;
  std::map<int, Matrix> diff_;
  std::map<int, std::vector<char>> diff_defined_;
  std::map<std::pair<int, int>, BracketBlock> bracket_;
  std::map<std::pair<int, int>, std::vector<char>> given_;
  std::vector<Dgla::StrayEntry> stray_;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string identity; // "antisymmetry", "jacobi", "leibniz", "d^2", "grading", ...
  std::vector<std::string> tuple;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::size_t checked = 0; // identities evaluated
  std::size_t skipped = 0; // tuples skipped because they leave the window
  bool passed() const { return violations.empty(); }
};

/// Exhaustive check of the DGLA axioms on basis tuples.  Stops collecting
/// after `max_violations` entries.
ValidationReport validate_dgla(const Dgla &l, std::size_t max_violations = 32);

// ---------------------------------------------------------------------------
// Morphisms

struct DglaMorphism {
  DglaPtr source;
  DglaPtr target;
  std::map<int, Matrix> blocks; // target dim x source dim, per degree

  Vec apply(int deg, const Vec &v) const;
};

ValidationReport validate_morphism(const DglaMorphism &f);
DglaMorphism identity_morphism(const DglaPtr &l);
DglaMorphism zero_morphism(const DglaPtr &source, const DglaPtr &target);

/// Matrices of H^i(f) in the chosen representative bases, for every degree
/// where both cohomologies are computable.
std::map<int, Matrix> induced_cohomology_maps(const DglaMorphism &f);
bool is_quasi_isomorphism(const DglaMorphism &f);

} // namespace dgla

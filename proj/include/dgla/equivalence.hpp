// Deciding gauge equivalence of Maurer–Cartan elements.
//
// When H^0(L) = 0 the decision is complete: x ~ y iff their Kuranishi normal
// forms coincide.  Otherwise a bounded level-by-level search for a witness
// runs along the small-extension tower and may end in Unknown.
#pragma once

#include "dgla/kuranishi.hpp"

namespace dgla {

enum class Verdict { Equivalent, NotEquivalent, Unknown };
std::string to_string(Verdict v);

struct SearchBudget {
  int coeff_range = 1;             // free directions take coefficients in [-r, r]
  std::size_t max_candidates = 64; // candidate gauges kept per level
};

struct EquivalenceDecision {
  Verdict verdict = Verdict::Unknown;
  bool complete = false; // H^0(L) = 0
  std::optional<TensorElement> witness; // e^witness * x = y, verified
  /// NotEquivalent: first tower level (counted from 𝕂 upwards, starting at
  /// 1) where the Kur images differ, and the H^1 ⊗ m_A coordinates
  /// (dim H^1 x dim m_A) of F(x') - F(y') there.
  int level = 0;
  Matrix h1_difference;
  std::string diagnostic;
};

EquivalenceDecision gauge_equivalent(const TensorElement &x, const TensorElement &y, const SearchBudget &budget = {});

} // namespace dgla

// Baker–Campbell–Hausdorff product on nilpotent Lie algebras, from the
// Dynkin expansion of log(e^X e^Y) as a Lie polynomial.
#pragma once

#include "dgla/tensor.hpp"

#include <vector>

namespace dgla {

/// One term c·[...[[w_0, w_1], w_2], ..., w_k] of the BCH series, letters
/// 0 = X and 1 = Y.
struct BchTerm {
  std::vector<int> word;
  Scalar coeff;
};

/// All nonzero terms with word length ≤ max_len, by increasing length.
const std::vector<BchTerm> &bch_terms(int max_len);

/// BCH product on any nilpotent Lie algebra whose brackets of `max_len + 1`
/// elements vanish.  T needs +, and Scalar * T; `br` is the Lie bracket.
template <class T, class Bracket>
T bch_series(const T &x, const T &y, int max_len, Bracket br) {
  T out = x + y;
  // left-nested brackets share prefixes; memoize along the current word
  std::vector<int> prev;
  std::vector<T> stack;
  for (const auto &term : bch_terms(max_len)) {
    if (term.word.size() < 2)
      continue;
    std::size_t common = 0;
    while (common < prev.size() && common < term.word.size() && prev[common] == term.word[common])
      ++common;
    // stack[i] = bracket of the first i+1 letters
    stack.erase(stack.begin() + static_cast<long>(common), stack.end());
    if (stack.empty())
      stack.push_back(term.word[0] == 0 ? x : y);
    for (std::size_t i = stack.size(); i < term.word.size(); ++i)
      stack.push_back(br(stack[i - 1], term.word[i] == 0 ? x : y));
    out = out + term.coeff * stack.back();
    prev = term.word;
  }
  return out;
}

/// a * b with e^{a*b} = e^a e^b in exp(L^0 ⊗ m_A).
TensorElement bch(const TensorElement &a, const TensorElement &b);

} // namespace dgla

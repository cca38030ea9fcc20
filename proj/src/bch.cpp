#include "dgla/bch.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace dgla {

namespace {

using Word = std::vector<int>;
using Poly = std::map<Word, Scalar>; // noncommutative polynomial in X, Y

Poly mul(const Poly &a, const Poly &b, std::size_t max_len) {
  Poly out;
  for (const auto &[wa, ca] : a)
    for (const auto &[wb, cb] : b) {
      if (wa.size() + wb.size() > max_len)
        continue;
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out[w] += ca * cb;
    }
  return out;
}

Scalar factorial(int n) {
  Scalar f = 1;
  for (int i = 2; i <= n; ++i)
    f *= i;
  return f;
}

std::vector<BchTerm> compute_terms(int max_len) {
  const auto n = static_cast<std::size_t>(max_len);
  // Z = e^X e^Y - 1
  Poly z;
  for (int r = 0; r <= max_len; ++r)
    for (int s = 0; r + s <= max_len; ++s) {
      if (r + s == 0)
        continue;
      Word w(static_cast<std::size_t>(r), 0);
      w.insert(w.end(), static_cast<std::size_t>(s), 1);
      z[w] += 1 / (factorial(r) * factorial(s));
    }
  // log(1 + Z) = Σ (-1)^{k+1} Z^k / k
  Poly log, power = z;
  for (int k = 1; k <= max_len; ++k) {
    for (const auto &[w, c] : power)
      log[w] += Scalar(k % 2 == 1 ? 1 : -1, k) * c;
    power = mul(power, z, n);
  }
  // Dynkin–Specht–Wever: a Lie element P of degree m equals θ(P)/m with θ
  // the left-nested bracketing of words
  std::vector<BchTerm> out;
  for (const auto &[w, c] : log) {
    if (c == 0 || w.size() < 2 || w[0] == w[1])
      continue;
    Scalar coeff = c / Scalar(static_cast<long>(w.size()));
    coeff.canonicalize();
    out.push_back({w, coeff});
  }
  std::stable_sort(out.begin(), out.end(), [](const BchTerm &a, const BchTerm &b) {
    return a.word.size() != b.word.size() ? a.word.size() < b.word.size() : a.word < b.word;
  });
  return out;
}

} // namespace

const std::vector<BchTerm> &bch_terms(int max_len) {
  static std::mutex mu;
  static std::map<int, std::vector<BchTerm>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(max_len);
  if (it == cache.end())
    it = cache.emplace(max_len, compute_terms(max_len)).first;
  return it->second;
}

TensorElement bch(const TensorElement &a, const TensorElement &b) {
  if (a.degree != 0 || b.degree != 0)
    throw Error("bch: gauge elements must have degree 0");
  const int len = a.a->nilpotency_index() - 1;
  return bch_series(a, b, std::max(len, 1),
                    [](const TensorElement &u, const TensorElement &v) { return bracket(u, v); });
}

} // namespace dgla

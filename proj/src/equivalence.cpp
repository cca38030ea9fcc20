#include "dgla/equivalence.hpp"

#include "dgla/bch.hpp"

#include <fmt/format.h>

namespace dgla {

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::Equivalent:
    return "Equivalent";
  case Verdict::NotEquivalent:
    return "NotEquivalent";
  case Verdict::Unknown:
    break;
  }
  return "Unknown";
}

namespace {

bool h0_vanishes(const Dgla &l) {
  if (l.dim(0) == 0)
    return true;
  const auto &h = cohomology(l);
  if (!h.has(0))
    throw WindowError("H^0 is not computable on this window");
  return h.dim_h(0) == 0;
}

TensorElement over(const TensorElement &x, const ArtinPtr &a) { return {x.l, a, x.degree, x.coeffs}; }

// All combinations Σ k_j v_j with k_j ∈ [-r, r], at most `cap` of them,
// starting with the zero combination.
std::vector<Vec> combinations(const std::vector<Vec> &dirs, std::size_t n, int r, std::size_t cap) {
  std::vector<Vec> out{zeros(n)};
  for (const auto &v : dirs) {
    std::vector<Vec> next;
    for (const auto &base : out)
      for (int k = 0; k <= 2 * r && next.size() < cap; ++k) {
        int c = (k + 1) / 2 * (k % 2 == 1 ? 1 : -1); // 0, 1, -1, 2, -2, ...
        Vec w = base;
        axpy(w, c, v);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

Vec flatten(const Matrix &m) {
  Vec out;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out.push_back(m(r, c));
  return out;
}

struct Candidate {
  TensorElement g;
  std::vector<Vec> freedom; // Z^0 ⊗ (kernel of the step that produced g)
};

// The Iso obstruction of g + Σ c_i v_i is affine in c to first order; solve
// for c and keep the result only if the lift really exists.
std::optional<TensorElement> solve_for_lift(const Candidate &cand, const TensorElement &xl, const TensorElement &yl,
                                            const SmallExtension &e) {
  const Vec o0 = flatten(iso_obstruction(cand.g, xl, yl, e).coords);
  if (is_zero(o0))
    return iso_lift(cand.g, xl, yl, e);
  if (cand.freedom.empty())
    return std::nullopt;
  std::vector<Vec> cols;
  for (const auto &v : cand.freedom) {
    TensorElement gv = cand.g + TensorElement{cand.g.l, cand.g.a, 0, v};
    Vec ov = flatten(iso_obstruction(gv, xl, yl, e).coords);
    axpy(ov, -1, o0);
    cols.push_back(std::move(ov));
  }
  Vec rhs = o0;
  for (auto &r : rhs)
    r = -r;
  auto sol = solve_affine(Matrix::from_columns(o0.size(), cols), rhs);
  if (!sol)
    return std::nullopt;
  Vec shift = zeros(cand.g.coeffs.size());
  for (std::size_t i = 0; i < cols.size(); ++i)
    axpy(shift, sol->particular[i], cand.freedom[i]);
  return iso_lift(cand.g + TensorElement{cand.g.l, cand.g.a, 0, shift}, xl, yl, e);
}

std::optional<TensorElement> search_witness(const TensorElement &x, const TensorElement &y, const SearchBudget &budget,
                                            std::string &diagnostic) {
  const auto tower = small_extension_tower(x.a);
  const std::vector<Vec> z0 = kernel(x.l->d_block(0)).vectors();
  std::vector<Candidate> cands;
  int level = 0;
  for (auto it = tower.rbegin(); it != tower.rend(); ++it, ++level) {
    const SmallExtension &e = *it;
    Matrix proj = Matrix::identity(x.dim_m());
    for (auto jt = tower.begin(); jt != tower.end() && jt->total != e.total; ++jt)
      proj = jt->projection.matrix * proj;
    TensorElement xl{x.l, e.total, 1, tensor_apply(x.dim_l(), proj, x.coeffs)};
    TensorElement yl{x.l, e.total, 1, tensor_apply(y.dim_l(), proj, y.coeffs)};
    if (level == 0)
      cands.push_back({TensorElement::zero(x.l, e.quotient, 0), {}});
    std::vector<Vec> dirs;
    for (const auto &z : z0)
      for (const auto &m : e.ideal.vectors())
        dirs.push_back(tensor_vec(z, m));
    std::vector<Candidate> next;
    for (const auto &cand : cands) {
      if (next.size() >= budget.max_candidates)
        break;
      if (auto lifted = solve_for_lift(cand, xl, yl, e)) {
        next.push_back({*lifted, dirs});
        continue;
      }
      // bounded integer search over the same freedom
      for (const auto &c : combinations(cand.freedom, cand.g.coeffs.size(), budget.coeff_range,
                                        budget.max_candidates)) {
        if (next.size() >= budget.max_candidates)
          break;
        if (auto lifted = iso_lift(cand.g + TensorElement{x.l, cand.g.a, 0, c}, xl, yl, e))
          next.push_back({*lifted, dirs});
      }
    }
    if (next.empty()) {
      diagnostic = fmt::format("witness search exhausted at tower level {} with {} candidates", level + 1,
                               cands.size());
      return std::nullopt;
    }
    cands = std::move(next);
  }
  return over(cands.front().g, x.a);
}

} // namespace

EquivalenceDecision gauge_equivalent(const TensorElement &x, const TensorElement &y, const SearchBudget &budget) {
  if (x.l != y.l || x.a->table() != y.a->table() || x.degree != 1 || y.degree != 1)
    throw Error("gauge_equivalent: elements must be degree-1 elements of the same L ⊗ m_A");
  if (!mc_check(x) || !mc_check(y))
    throw Error("gauge_equivalent: inputs must be Maurer-Cartan");
  TensorElement yy = over(y, x.a);
  EquivalenceDecision out;
  out.complete = h0_vanishes(*x.l);
  const NormalForm nx = gauge_normalize(x), ny = gauge_normalize(yy);
  if (nx.normal == ny.normal) {
    // y = e^{-g_y} e^{g_x} x
    TensorElement w = bch(-ny.gauge, nx.gauge);
    if (!(exp_action(w, x) == yy))
      throw Error("gauge_equivalent: assembled witness failed verification");
    out.verdict = Verdict::Equivalent;
    out.witness = w;
    return out;
  }
  if (out.complete) {
    out.verdict = Verdict::NotEquivalent;
    auto s = build_hodge_split(x.l);
    TensorElement kx = mc_to_kur(nx.normal), ky = mc_to_kur(ny.normal);
    const auto tower = small_extension_tower(x.a);
    // lowest level where the Kur images differ
    Matrix proj = Matrix::identity(x.dim_m());
    std::vector<Matrix> projections{proj};
    for (const auto &e : tower)
      projections.push_back(proj = e.projection.matrix * proj);
    for (std::size_t k = projections.size(); k-- > 0;) {
      if (!(tensor_apply(x.dim_l(), projections[k], (kx - ky).coeffs) == zeros(projections[k].rows() * x.dim_l()))) {
        out.level = static_cast<int>(tower.size() - k);
        break;
      }
    }
    TensorElement diff = kx - ky;
    const Matrix &hc = s->h_coords(1);
    out.h1_difference = Matrix(hc.rows(), x.dim_m());
    for (std::size_t j = 0; j < hc.rows(); ++j)
      for (std::size_t p = 0; p < x.dim_m(); ++p) {
        Scalar acc = 0;
        for (std::size_t k = 0; k < x.dim_l(); ++k)
          acc += hc(j, k) * diff.at(k, p);
        out.h1_difference(j, p) = acc;
      }
    return out;
  }
  std::string diag;
  if (auto w = search_witness(x, yy, budget, diag)) {
    if (!(exp_action(*w, x) == yy))
      throw Error("gauge_equivalent: search witness failed verification");
    out.verdict = Verdict::Equivalent;
    out.witness = w;
    return out;
  }
  out.verdict = Verdict::Unknown;
  out.diagnostic = "H^0(L) ≠ 0 and the normal forms differ; " + diag;
  return out;
}

} // namespace dgla

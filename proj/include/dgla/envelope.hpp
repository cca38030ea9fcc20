// L presented inside the graded endomorphisms of a complex (V, D), and the
// gauge action of the polarized-algebra picture:
//   g * v = v + Σ_i (-1)^i ([g,v] - δg) g^i = (1+g)(D+v)(1+g)^{-1} - D
// for g ∈ End^0(V) ⊗ m_A, v ∈ End^1(V) ⊗ m_A.
#pragma once

#include "dgla/tensor.hpp"

namespace dgla {

/// ρ : L -> End(V) with ρ[x,y] = [ρx, ρy] (graded commutator) and
/// ρ(dx) = [D, ρx].  V is graded by `v_degrees` (one entry per basis vector).
struct Envelope {
  DglaPtr l;
  std::vector<int> v_degrees;
  Matrix D;
  std::map<int, std::vector<Matrix>> rho; // rho[i][k] = ρ(e_k), e_k ∈ L^i

  std::size_t dim() const { return v_degrees.size(); }
};

/// Throws Error naming the first failing identity.
void validate_envelope(const Envelope &env);

/// Adjoint representation on V = L (the window itself) with D = d.  Needs
/// either a closed window or lo ≥ 0, where the truncated part L^{>hi} is an
/// ideal; otherwise throws Error("no associative envelope ...").
Envelope adjoint_envelope(const DglaPtr &l);

/// The D2 fixture inside End(V), V = ⟨p1, p2⟩ ⊕ ⟨q⟩[-1], D p1 = q,
/// ρ(c) p2 = p1, ρ(u) p2 = q.
Envelope d2_envelope(const DglaPtr &d2);

/// Best available envelope: the explicit one for D2, otherwise adjoint.
Envelope envelope_for(const DglaPtr &l);

/// An element of End(V) ⊗ m_A: one matrix per basis vector of m_A.
struct EnvElement {
  ArtinPtr a;
  std::vector<Matrix> m;

  bool operator==(const EnvElement &o) const { return m == o.m; }
};

EnvElement represent(const Envelope &env, const TensorElement &x);
EnvElement env_product(const EnvElement &x, const EnvElement &y);
/// e^{ρa} - 1 for a ∈ L^0 ⊗ m_A.
EnvElement exp_minus_one(const Envelope &env, const TensorElement &a);
/// The action g * v above; the series stops by nilpotency.
EnvElement pga_gauge_action(const Envelope &env, const EnvElement &g, const EnvElement &v);

/// ρ(e^a * x) = (e^{ρa} - 1) * ρ(x), compared exactly.
bool pga_agrees(const Envelope &env, const TensorElement &a, const TensorElement &x);

} // namespace dgla

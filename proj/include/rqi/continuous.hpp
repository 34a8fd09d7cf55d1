// continuous.hpp — the limit dynamics dU_t = Σ L_j^i U_t da_j^i(t)
//
// Coherent matrix elements Θ_t with ⟨a ⊗ ε(φ), U_t b ⊗ ε(ψ)⟩ = ⟨a, Θ_t b⟩
// solve Θ' = G(s) Θ with G(s) = Σ_{j,i} conj(φ_j(s)) ψ_i(s) L_j^i (φ_0 = ψ_0 = 1)
// and Θ_0 = ⟨ε(φ), ε(ψ)⟩ I.

#pragma once

#include "rqi/discrete.hpp"
#include "rqi/hamiltonian.hpp"
#include "rqi/superoperator.hpp"

namespace rqi {

// RK4 with steps snapped to the breakpoints of phi and psi.
ComplexMatrix qsde_matrix_element(const QsdeCoefficients& c, const CoherentFunction& phi,
                                  const CoherentFunction& psi, double t, double step);

// ℒ(X) = L_0^0* X + X L_0^0 + Σ_i L_i^0* X L_i^0
Superoperator lindblad_generator(const QsdeCoefficients& c);

// ‖ℒ(I)‖_op; zero exactly when the dynamics is unital.
double unitality_defect(const Superoperator& generator);

// e^{tℒ}
Superoperator semigroup_apply(const Superoperator& g, double t);

ComplexMatrix vacuum_heisenberg(const QsdeCoefficients& c, const ComplexMatrix& x, double t);

} // namespace rqi

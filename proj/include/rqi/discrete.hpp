// discrete.hpp — repeated-interaction dynamics on the atom chain
//
// u_n = 𝕃_n ⋯ 𝕃_1, where 𝕃_k acts on the system and chain site k. Matrix
// elements between discretized coherent vectors reduce to products of n0 × n0
// matrices; the dense chain simulation is kept as an independent oracle.

#pragma once

#include <vector>

#include "rqi/model.hpp"
#include "rqi/superoperator.hpp"

namespace rqi {

// Piecewise-constant φ: R+ → C^N, zero beyond the last breakpoint.
class CoherentFunction {
public:
    CoherentFunction() = default;
    // breakpoints 0 = s_0 < s_1 < ... < s_m, values[k] on [s_k, s_{k+1}).
    CoherentFunction(Eigen::Index n_levels, std::vector<double> breakpoints,
                     std::vector<ComplexVector> values);

    static CoherentFunction zero(Eigen::Index n_levels);
    static CoherentFunction constant(const ComplexVector& value, double t_end);

    Eigen::Index n_levels() const noexcept { return n_levels_; }
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    const std::vector<ComplexVector>& values() const noexcept { return values_; }
    double support_end() const noexcept { return breakpoints_.back(); }

    ComplexVector value_at(double t) const;
    // Exact ∫_a^b φ(s) ds.
    ComplexVector integral(double a, double b) const;
    double sup_norm() const;

private:
    Eigen::Index n_levels_ = 0;
    std::vector<double> breakpoints_{0.0};
    std::vector<ComplexVector> values_;
};

// Exact ∫_a^∞ ⟨φ(s), ψ(s)⟩ ds (conjugate-linear in φ).
cplx coherent_inner(const CoherentFunction& phi, const CoherentFunction& psi, double a = 0.0);

struct DiscreteCoherent {
    double h = 0.0;
    std::vector<ComplexVector> sites; // sites[k-1] = φ̃(k) ∈ C^N

    // φ̃(k), or zero past the stored sites.
    ComplexVector site(std::size_t k, Eigen::Index n_levels) const;
};

// ⌊t/h⌋, robust to t/h landing a rounding error below an integer.
std::size_t steps_for(double t, double h);

// Number of sites needed to cover the support of f at step h.
std::size_t sites_covering(const CoherentFunction& f, double h);

// φ̃_i(n) = h^{-1/2} ∫_{(n-1)h}^{nh} φ_i(s) ds for n = 1..n_sites.
DiscreteCoherent discretize_coherent(const CoherentFunction& f, double h, std::size_t n_sites);

struct DiscreteBracket {
    ComplexMatrix m;                // C(n) ⋯ C(1)
    cplx tail;                      // Π_{k>n} (1 + ⟨φ̃(k), ψ̃(k)⟩)
    ComplexMatrix bracket_operator; // tail · m
};

// ⟨a ⊗ e(φ̃), u_n b ⊗ e(ψ̃)⟩ = ⟨a, bracket_operator · b⟩, with
// C(k) = Σ_{j,i} conj(φ̃_j(k)) ψ̃_i(k) 𝕃_j^i and φ̃_0 = ψ̃_0 = 1.
// One step: n = 1 gives m = C(1) = 𝕃_0^0 + Σ_i ψ̃_i 𝕃_0^i + Σ_j conj(φ̃_j) 𝕃_j^0 + ...
DiscreteBracket discrete_matrix_element(const BlockOperator& l, const DiscreteCoherent& phi,
                                        const DiscreteCoherent& psi, std::size_t n);

// ℓ(X) = Σ_i (𝕃_i^0)* X 𝕃_i^0
Superoperator reduced_cp_map(const BlockOperator& l);

Superoperator iterate_cp(const Superoperator& s, std::size_t n);

// Dense-chain evaluation of the same bracket as discrete_matrix_element.
cplx chain_simulate_bracket(const BlockOperator& l, std::size_t n, const ComplexVector& a,
                            const DiscreteCoherent& phi, const ComplexVector& b,
                            const DiscreteCoherent& psi, std::size_t cap = kDefaultChainCap);

} // namespace rqi

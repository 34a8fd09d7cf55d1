// scenarios.hpp — built-in instances with closed-form expectations
//
// Stable identifiers: "von-neumann", "two-level", "weak-coupling", "low-density".

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rqi/hamiltonian.hpp"

namespace rqi {

struct ProjectionFamily {
    Eigen::Index n0 = 0;
    std::vector<ComplexMatrix> projections;

    // Throws InvalidProjectionFamily unless the P_k are Hermitian, idempotent,
    // mutually orthogonal and sum to I (all to 1e-10).
    void validate() const;
};

// Diagonal projections onto the canonical basis of C^n0.
ProjectionFamily diagonal_projections(Eigen::Index n0);

// N = #projections, V_k = i P_k, H0 = H_S = D = 0.
InteractionParams von_neumann_params(const ProjectionFamily& p);

// (1 − e^{-t}) Σ_k P_k X P_k + e^{-t} X
ComplexMatrix von_neumann_closed_form(const ProjectionFamily& p, const ComplexMatrix& x, double t);

// Σ_k P_k X P_k
ComplexMatrix pinching(const ProjectionFamily& p, const ComplexMatrix& x);

// [[0, 1], [0, 0]]: lowers the excited level X to Ω.
ComplexMatrix two_level_lowering();

// Exchange unitary with angle α = √h by default, or a fixed angle.
BlockOperator two_level_step(double h, std::optional<double> fixed_alpha = std::nullopt);

// Hamiltonian route to the same step at α = √h: V_1 = i·[[0,1],[0,0]].
InteractionParams two_level_params();

// Excited population ⟨V*V⟩ under the limit dynamics: e^{-t}.
double two_level_expected(double t);

InteractionParams weak_coupling_params(const HermitianMatrix& h0, const HermitianMatrix& hs,
                                       const std::vector<ComplexMatrix>& v);
InteractionParams low_density_params(const HermitianMatrix& h0, const HermitianMatrix& hs,
                                     const HermitianMatrix& d);

struct RandomParamsOptions {
    double scale = 0.5; // operator norm of each of H0, H_S, V (column) and D
    bool with_v = true;
    bool with_d = true;
};

// Gaussian entries rescaled to the requested operator norms (std::mt19937_64).
InteractionParams random_params(SpaceDims dims, std::uint64_t seed,
                                const RandomParamsOptions& opts = {});

} // namespace rqi

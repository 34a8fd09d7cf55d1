// dilation.hpp — unitary dilation of Kraus families and convergence of the
// reduced discrete dynamics ℓ_h^{⌊t/h⌋} to the Lindblad semigroup e^{tℒ}

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rqi/hamiltonian.hpp"
#include "rqi/superoperator.hpp"

namespace rqi {

struct KrausFamily {
    SpaceDims dims;
    std::vector<ComplexMatrix> ops; // A_0 ... A_N, each n0 × n0

    KrausFamily() = default;
    KrausFamily(SpaceDims dims, std::vector<ComplexMatrix> ops);

    // ‖Σ_i A_i† A_i − I‖_op
    double isometry_defect() const;
};

// Unitary 𝕃 with block(i, 0) = A_i. Remaining columns come from Gram–Schmidt
// over the canonical basis of H0 ⊗ H in index order (dependence threshold 1e-8).
BlockOperator kraus_dilate(const KrausFamily& k);

// H = i(L_0^0 + ½ Σ_i L_i^0† L_i^0); NotSelfAdjoint when ‖H − H†‖ > 1e-8.
HermitianMatrix effective_hamiltonian(const QsdeCoefficients& c);

using StepFamily = std::function<BlockOperator(double)>;

struct SemigroupLimitRow {
    double h = 0.0;
    std::size_t steps = 0;
    double distance = 0.0;        // ‖ℓ_h^{steps} − e^{tℒ}‖ (spectral norm of n0² × n0² matrices)
    double discrete_norm = 0.0;
    double continuous_norm = 0.0;
    Superoperator discrete;
};

struct SemigroupLimitReport {
    double t = 0.0;
    Superoperator continuous;
    std::vector<SemigroupLimitRow> rows;
    std::optional<double> fitted_order;
};

SemigroupLimitReport discrete_semigroup_limit_check(const StepFamily& l_family,
                                                    const QsdeCoefficients& c, double t,
                                                    const std::vector<double>& h_list);

} // namespace rqi

// hamiltonian.hpp — three-time-scale interaction Hamiltonian, its step unitary,
// and the coefficients of the limiting quantum Langevin equation
//
//   H = H0 ⊗ I + I ⊗ H_S + h^{-1/2} Σ_i (V_i ⊗ a_i^0 + V_i* ⊗ a_0^i)
//       + h^{-1} Σ_{ij} D_ij ⊗ a_j^i
//
// Rectangular objects follow one layout: a "column" (V, W, |k⟩) is an
// (n0·N) × n0 matrix whose block row i-1 belongs to level i; the "matrix" D
// is (n0·N) × (n0·N) with block (j-1, i-1) the coefficient of a_j^i.

#pragma once

#include <optional>
#include <vector>

#include "rqi/model.hpp"
#include "rqi/numerics.hpp"

namespace rqi {

struct InteractionParams {
    SpaceDims dims;
    HermitianMatrix h0;         // n0 × n0
    HermitianMatrix hs;         // (N+1) × (N+1), hs(j, i) = ⟨X^j, H_S X^i⟩
    std::vector<ComplexMatrix> v; // N entries, each n0 × n0
    HermitianMatrix d;          // (n0·N) × (n0·N)

    InteractionParams() = default;
    InteractionParams(SpaceDims dims, HermitianMatrix h0, HermitianMatrix hs,
                      std::vector<ComplexMatrix> v, HermitianMatrix d);

    // All-zero parameters of the given shape.
    static InteractionParams zero(SpaceDims dims);

    ComplexMatrix v_column() const;          // (n0·N) × n0
    ComplexMatrix h_tilde() const;           // H0 + k_0^0 I
    ComplexMatrix k_column() const;          // |k⟩, blocks k_j^0 I
    ComplexMatrix k_row() const;             // ⟨k|, blocks k_0^i I
    ComplexMatrix m_matrix() const;          // M_j^i = δ_ij H0 + k_j^i I
};

struct QsdeStructure {
    HermitianMatrix k; // effective Hamiltonian
    ComplexMatrix w;   // (n0·N) × n0
    ComplexMatrix s;   // (n0·N) × (n0·N), unitary
};

struct QsdeCoefficients {
    SpaceDims dims;
    BlockOperator table; // table.block(j, i) = L_j^i
    std::optional<QsdeStructure> structured;
};

// L_0^0 = −(iK + ½W*W), L_•^0 = W, L_0^• = −W*S, L_•^• = S − I.
QsdeCoefficients coefficients_from_structure(SpaceDims dims, const QsdeStructure& st);

HermitianMatrix build_hamiltonian(const InteractionParams& p, double h);

// flat_to_block(expm(−i h H))
BlockOperator unitary_step(const InteractionParams& p, double h);

// max of ‖H̃‖, ‖V‖, ‖D‖, ‖M‖, ‖⟨k|‖, ‖|k⟩‖ (operator norms)
double lemma20_alpha(const InteractionParams& p);

struct Lemma20Result {
    BlockOperator step;
    int terms = 0; // highest power of hH included
};

// Step unitary from the block recursion for (hH)^m = [[hA_m + h^{3/2}R¹_m, √h B_m + hR²_m],
// [√h C_m + hR³_m, D_m + hR⁴_m]], summed until the tail bound drops below tol.
// Throws NormTooLarge when α·max(1, h) >= 20.
Lemma20Result lemma20_series(const InteractionParams& p, double h, double tol);
BlockOperator lemma20_blocks(const InteractionParams& p, double h, double tol);

QsdeCoefficients limit_coefficients(const InteractionParams& p);

struct HypothesisRow {
    double h = 0.0;
    double residual = 0.0;           // Σ ‖(𝕃_j^i − δ_ij I)/h^{ε_ij} − L_j^i‖²_op
    double residual_frobenius = 0.0; // same with Frobenius norms
};

struct HypothesisReport {
    std::vector<HypothesisRow> rows;
    std::optional<double> fitted_order;
};

// Exponents: ε_00 = 1, ε_i0 = ε_0j = 1/2, ε_ij = 0.
HypothesisReport check_convergence_hypothesis(const InteractionParams& p,
                                              const std::vector<double>& h_list);
// Same check for an arbitrary step family against given coefficients.
HypothesisReport check_convergence_hypothesis(
    const std::function<BlockOperator(double)>& family, const QsdeCoefficients& c,
    const std::vector<double>& h_list);

struct StructureDiagnostics {
    double s_isometry = 0.0;        // ‖S*S − I‖
    double s_coisometry = 0.0;      // ‖SS* − I‖
    double annihilation_defect = 0.0; // ‖L_0^• + W*S‖
    double drift_defect = 0.0;      // ‖L_0^0 + iK + ½W*W‖
    double k_hermiticity = 0.0;     // ‖K − K*‖ with K := i(L_0^0 + ½W*W)
    bool pass = false;
};

StructureDiagnostics unitarity_structure_check(const QsdeCoefficients& c, double tol);

} // namespace rqi

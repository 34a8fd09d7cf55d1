// superoperator.hpp — linear maps on B(H0) under column-stacking vectorization
//
// vec(A X B) = (Bᵀ ⊗ A) vec(X). All maps here are Heisenberg-picture maps.

#pragma once

#include <vector>

#include "rqi/numerics.hpp"

namespace rqi {

struct Superoperator {
    Eigen::Index n0 = 0;
    ComplexMatrix matrix; // n0² × n0²

    static Superoperator identity(Eigen::Index n0);

    // Devectorized action on an n0 × n0 operator.
    ComplexMatrix apply(const ComplexMatrix& x) const;
};

ComplexVector vectorize(const ComplexMatrix& x);
ComplexMatrix devectorize(const ComplexVector& v, Eigen::Index n0);

// X ↦ Σ_k A_k† X A_k
Superoperator kraus_superoperator(const std::vector<ComplexMatrix>& ops);

// J = Σ_{ab} E_ab ⊗ Φ(E_ab); Φ is completely positive iff J ⪰ 0.
ComplexMatrix choi_matrix(const Superoperator& s);
double choi_min_eigenvalue(const Superoperator& s);

} // namespace rqi

// Shared helpers for the test binaries.
#pragma once

#include <random>

#include "rqi/numerics.hpp"

namespace rqi::test {

inline ComplexMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            m(i, j) = cplx{re, normal(rng)};
        }
    }
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
    const ComplexMatrix g = random_matrix(rng, n, n);
    return 0.5 * (g + g.adjoint());
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
    Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(rng, n, n));
    return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

inline double dist(const ComplexMatrix& a, const ComplexMatrix& b) { return op_norm(a - b); }

} // namespace rqi::test

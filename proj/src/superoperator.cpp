#include "rqi/superoperator.hpp"

namespace rqi {

Superoperator Superoperator::identity(Eigen::Index n0) {
    return {n0, ComplexMatrix::Identity(n0 * n0, n0 * n0)};
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& x) const {
    if (x.rows() != n0 || x.cols() != n0) {
        throw Error(ErrorKind::DimensionMismatch, "operator size does not match superoperator");
    }
    return devectorize(matrix * vectorize(x), n0);
}

ComplexVector vectorize(const ComplexMatrix& x) {
    // Eigen storage is column-major, so the raw buffer is already vec(x).
    return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix devectorize(const ComplexVector& v, Eigen::Index n0) {
    if (v.size() != n0 * n0) {
        throw Error(ErrorKind::DimensionMismatch, "vector length must be n0²");
    }
    return Eigen::Map<const ComplexMatrix>(v.data(), n0, n0);
}

Superoperator kraus_superoperator(const std::vector<ComplexMatrix>& ops) {
    if (ops.empty()) {
        throw Error(ErrorKind::DimensionMismatch, "empty Kraus family");
    }
    const Eigen::Index n0 = ops.front().rows();
    Superoperator s{n0, ComplexMatrix::Zero(n0 * n0, n0 * n0)};
    for (const auto& a : ops) {
        if (a.rows() != n0 || a.cols() != n0) {
            throw Error(ErrorKind::DimensionMismatch, "Kraus operators must share one square size");
        }
        s.matrix += kron(a.transpose(), a.adjoint());
    }
    return s;
}

ComplexMatrix choi_matrix(const Superoperator& s) {
    const Eigen::Index n = s.n0;
    ComplexMatrix j = ComplexMatrix::Zero(n * n, n * n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            ComplexMatrix e = ComplexMatrix::Zero(n, n);
            e(a, b) = 1.0;
            j.block(a * n, b * n, n, n) = s.apply(e);
        }
    }
    return j;
}

double choi_min_eigenvalue(const Superoperator& s) {
    const ComplexMatrix j = choi_matrix(s);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (j + j.adjoint()),
                                                        Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::EigenFailure, "Choi eigendecomposition did not converge");
    }
    return solver.eigenvalues()(0);
}

} // namespace rqi

#include "rqi/dilation.hpp"

#include <string>

#include "rqi/continuous.hpp"
#include "rqi/discrete.hpp"
#include "rqi/fit.hpp"

namespace rqi {

KrausFamily::KrausFamily(SpaceDims dims_, std::vector<ComplexMatrix> ops_)
    : dims(dims_), ops(std::move(ops_)) {
    if (static_cast<Eigen::Index>(ops.size()) != dims.env_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "Kraus family needs N + 1 operators");
    }
    for (const auto& a : ops) {
        if (a.rows() != dims.n0 || a.cols() != dims.n0) {
            throw Error(ErrorKind::DimensionMismatch, "Kraus operators must be n0 x n0");
        }
    }
}

double KrausFamily::isometry_defect() const {
    ComplexMatrix gram = -ComplexMatrix::Identity(dims.n0, dims.n0);
    for (const auto& a : ops) {
        gram += a.adjoint() * a;
    }
    return op_norm(gram);
}

BlockOperator kraus_dilate(const KrausFamily& k) {
    const double defect = k.isometry_defect();
    if (defect > 1e-10) {
        throw Error(ErrorKind::NotAnIsometry,
                    "sum A_i^* A_i differs from I by " + std::to_string(defect));
    }
    const auto& dims = k.dims;
    const Eigen::Index n0 = dims.n0;
    const Eigen::Index dim = dims.flat_dim();
    ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dims.env_dim(); ++i) {
        u.block(i * n0, 0, n0, n0) = k.ops[static_cast<std::size_t>(i)];
    }

    Eigen::Index accepted = n0;
    for (Eigen::Index m = 0; m < dim && accepted < dim; ++m) {
        ComplexVector v = ComplexVector::Unit(dim, m);
        // Two passes of classical Gram–Schmidt keep the basis orthonormal to rounding.
        for (int pass = 0; pass < 2; ++pass) {
            const auto basis = u.leftCols(accepted);
            v -= basis * (basis.adjoint() * v);
        }
        const double norm = v.norm();
        if (norm > 1e-8) {
            u.col(accepted++) = v / norm;
        }
    }
    if (accepted != dim) {
        throw Error(ErrorKind::CompletionFailure, "could not complete the isometry to a unitary");
    }
    // Restore the supplied first column bitwise; the completion only filled the rest.
    BlockOperator out = flat_to_block(u, dims);
    for (Eigen::Index i = 0; i < dims.env_dim(); ++i) {
        out.block(i, 0) = k.ops[static_cast<std::size_t>(i)];
    }
    const double residual =
        op_norm(u.adjoint() * u - ComplexMatrix::Identity(dim, dim));
    if (residual > 1e-10) {
        throw Error(ErrorKind::CompletionFailure,
                    "completed matrix is not unitary, residual " + std::to_string(residual));
    }
    return out;
}

HermitianMatrix effective_hamiltonian(const QsdeCoefficients& c) {
    ComplexMatrix acc = c.table.block(0, 0);
    for (Eigen::Index i = 1; i <= c.dims.n_env; ++i) {
        const ComplexMatrix& li = c.table.block(i, 0);
        acc += 0.5 * li.adjoint() * li;
    }
    const ComplexMatrix h = I_unit * acc;
    const double defect = op_norm(h - h.adjoint());
    if (defect > 1e-8) {
        throw Error(ErrorKind::NotSelfAdjoint,
                    "i(L00 + 1/2 sum L*L) is not self-adjoint, defect " + std::to_string(defect));
    }
    return HermitianMatrix(h);
}

SemigroupLimitReport discrete_semigroup_limit_check(const StepFamily& l_family,
                                                    const QsdeCoefficients& c, double t,
                                                    const std::vector<double>& h_list) {
    for (std::size_t k = 0; k < h_list.size(); ++k) {
        if (!(h_list[k] > 0.0) || (k > 0 && !(h_list[k] < h_list[k - 1]))) {
            throw Error(ErrorKind::ValidationError,
                        "h_list must be positive and strictly decreasing");
        }
    }
    SemigroupLimitReport report;
    report.t = t;
    report.continuous = semigroup_apply(lindblad_generator(c), t);
    const double continuous_norm = op_norm(report.continuous.matrix);
    std::vector<std::pair<double, double>> points;
    for (const double h : h_list) {
        SemigroupLimitRow row;
        row.h = h;
        row.steps = steps_for(t, h);
        row.discrete = iterate_cp(reduced_cp_map(l_family(h)), row.steps);
        row.distance = op_norm(row.discrete.matrix - report.continuous.matrix);
        row.discrete_norm = op_norm(row.discrete.matrix);
        row.continuous_norm = continuous_norm;
        points.emplace_back(h, row.distance);
        report.rows.push_back(std::move(row));
    }
    try {
        report.fitted_order = fit_order(points);
    } catch (const Error&) {
        report.fitted_order.reset();
    }
    return report;
}

} // namespace rqi

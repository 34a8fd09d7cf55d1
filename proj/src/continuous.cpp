#include "rqi/continuous.hpp"

#include <algorithm>
#include <cmath>

namespace rqi {

namespace {

ComplexMatrix drift_at(const QsdeCoefficients& c, const ComplexVector& phi,
                       const ComplexVector& psi) {
    const auto& dims = c.dims;
    const Eigen::Index env = dims.env_dim();
    ComplexVector fphi(env), fpsi(env);
    fphi(0) = 1.0;
    fpsi(0) = 1.0;
    fphi.tail(dims.n_env) = phi;
    fpsi.tail(dims.n_env) = psi;
    ComplexMatrix g = ComplexMatrix::Zero(dims.n0, dims.n0);
    for (Eigen::Index j = 0; j < env; ++j) {
        for (Eigen::Index i = 0; i < env; ++i) {
            const cplx w = std::conj(fphi(j)) * fpsi(i);
            if (w != cplx{0.0, 0.0}) {
                g += w * c.table.block(j, i);
            }
        }
    }
    return g;
}

} // namespace

ComplexMatrix qsde_matrix_element(const QsdeCoefficients& c, const CoherentFunction& phi,
                                  const CoherentFunction& psi, double t, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(ErrorKind::InvalidStep, "ODE step must be positive");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw Error(ErrorKind::InvalidStep, "time must be nonnegative");
    }
    if (phi.n_levels() != c.dims.n_env || psi.n_levels() != c.dims.n_env) {
        throw Error(ErrorKind::DimensionMismatch, "coherent functions must have N levels");
    }
    const Eigen::Index n0 = c.dims.n0;
    ComplexMatrix theta =
        std::exp(coherent_inner(phi, psi)) * ComplexMatrix::Identity(n0, n0);

    std::vector<double> cuts{0.0, t};
    for (const auto* f : {&phi, &psi}) {
        for (const double s : f->breakpoints()) {
            if (s > 0.0 && s < t) {
                cuts.push_back(s);
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = cuts[k], hi = cuts[k + 1];
        const double mid = 0.5 * (lo + hi);
        const ComplexMatrix g = drift_at(c, phi.value_at(mid), psi.value_at(mid));
        theta = ode_solve_constant(g, theta, hi - lo, step);
    }
    return theta;
}

Superoperator lindblad_generator(const QsdeCoefficients& c) {
    const Eigen::Index n0 = c.dims.n0;
    const ComplexMatrix id = ComplexMatrix::Identity(n0, n0);
    const ComplexMatrix& l00 = c.table.block(0, 0);
    Superoperator g{n0, kron(id, l00.adjoint()) + kron(l00.transpose(), id)};
    for (Eigen::Index i = 1; i <= c.dims.n_env; ++i) {
        const ComplexMatrix& li = c.table.block(i, 0);
        g.matrix += kron(li.transpose(), li.adjoint());
    }
    return g;
}

double unitality_defect(const Superoperator& generator) {
    return op_norm(generator.apply(ComplexMatrix::Identity(generator.n0, generator.n0)));
}

Superoperator semigroup_apply(const Superoperator& g, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw Error(ErrorKind::ValidationError, "semigroup time must be nonnegative");
    }
    return {g.n0, expm(t * g.matrix)};
}

ComplexMatrix vacuum_heisenberg(const QsdeCoefficients& c, const ComplexMatrix& x, double t) {
    if (x.rows() != c.dims.n0 || x.cols() != c.dims.n0) {
        throw Error(ErrorKind::DimensionMismatch, "observable must be n0 x n0");
    }
    return semigroup_apply(lindblad_generator(c), t).apply(x);
}

} // namespace rqi

#include "rqi/scenarios.hpp"

#include <cmath>
#include <random>
#include <string>

namespace rqi {

void ProjectionFamily::validate() const {
    constexpr double tol = 1e-10;
    if (projections.empty()) {
        throw Error(ErrorKind::InvalidProjectionFamily, "no projections given");
    }
    const ComplexMatrix id = ComplexMatrix::Identity(n0, n0);
    ComplexMatrix sum = ComplexMatrix::Zero(n0, n0);
    for (std::size_t k = 0; k < projections.size(); ++k) {
        const ComplexMatrix& p = projections[k];
        if (p.rows() != n0 || p.cols() != n0) {
            throw Error(ErrorKind::InvalidProjectionFamily, "projection has the wrong size");
        }
        if (op_norm(p - p.adjoint()) > tol || op_norm(p * p - p) > tol) {
            throw Error(ErrorKind::InvalidProjectionFamily,
                        "P_" + std::to_string(k + 1) + " is not an orthogonal projection");
        }
        for (std::size_t l = 0; l < k; ++l) {
            if (op_norm(p * projections[l]) > tol) {
                throw Error(ErrorKind::InvalidProjectionFamily, "projections are not orthogonal");
            }
        }
        sum += p;
    }
    if (op_norm(sum - id) > tol) {
        throw Error(ErrorKind::InvalidProjectionFamily, "projections do not sum to I");
    }
}

ProjectionFamily diagonal_projections(Eigen::Index n0) {
    ProjectionFamily p{n0, {}};
    for (Eigen::Index k = 0; k < n0; ++k) {
        ComplexMatrix e = ComplexMatrix::Zero(n0, n0);
        e(k, k) = 1.0;
        p.projections.push_back(e);
    }
    return p;
}

InteractionParams von_neumann_params(const ProjectionFamily& p) {
    p.validate();
    const SpaceDims dims(p.n0, static_cast<Eigen::Index>(p.projections.size()));
    InteractionParams params = InteractionParams::zero(dims);
    for (std::size_t k = 0; k < p.projections.size(); ++k) {
        params.v[k] = I_unit * p.projections[k];
    }
    return params;
}

ComplexMatrix pinching(const ProjectionFamily& p, const ComplexMatrix& x) {
    if (x.rows() != p.n0 || x.cols() != p.n0) {
        throw Error(ErrorKind::DimensionMismatch, "observable must be n0 x n0");
    }
    ComplexMatrix out = ComplexMatrix::Zero(p.n0, p.n0);
    for (const auto& proj : p.projections) {
        out += proj * x * proj;
    }
    return out;
}

ComplexMatrix von_neumann_closed_form(const ProjectionFamily& p, const ComplexMatrix& x,
                                      double t) {
    const double decay = std::exp(-t);
    return (1.0 - decay) * pinching(p, x) + decay * x;
}

ComplexMatrix two_level_lowering() {
    ComplexMatrix v = ComplexMatrix::Zero(2, 2);
    v(0, 1) = 1.0;
    return v;
}

BlockOperator two_level_step(double h, std::optional<double> fixed_alpha) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(ErrorKind::InvalidTimestep, "timestep h must be positive");
    }
    const double alpha = fixed_alpha.value_or(std::sqrt(h));
    const double c = std::cos(alpha), s = std::sin(alpha);
    BlockOperator l(SpaceDims(2, 1));
    l.block(0, 0) << 1.0, 0.0, 0.0, c;
    l.block(1, 0) << 0.0, s, 0.0, 0.0;
    l.block(0, 1) << 0.0, 0.0, -s, 0.0;
    l.block(1, 1) << c, 0.0, 0.0, 1.0;
    return l;
}

InteractionParams two_level_params() {
    InteractionParams p = InteractionParams::zero(SpaceDims(2, 1));
    p.v[0] = I_unit * two_level_lowering();
    return p;
}

double two_level_expected(double t) { return std::exp(-t); }

InteractionParams weak_coupling_params(const HermitianMatrix& h0, const HermitianMatrix& hs,
                                       const std::vector<ComplexMatrix>& v) {
    const SpaceDims dims(h0.size(), static_cast<Eigen::Index>(v.size()));
    return {dims, h0, hs, v, HermitianMatrix::zero(dims.n0 * dims.n_env)};
}

InteractionParams low_density_params(const HermitianMatrix& h0, const HermitianMatrix& hs,
                                     const HermitianMatrix& d) {
    const SpaceDims dims(h0.size(), hs.size() - 1);
    return {dims, h0, hs,
            std::vector<ComplexMatrix>(static_cast<std::size_t>(dims.n_env),
                                       ComplexMatrix::Zero(dims.n0, dims.n0)),
            d};
}

namespace {

ComplexMatrix gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = cplx{re, im};
        }
    }
    return m;
}

ComplexMatrix with_norm(const ComplexMatrix& m, double target) {
    const double n = op_norm(m);
    return n > 0.0 ? ComplexMatrix(m * (target / n)) : m;
}

HermitianMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index n, double scale) {
    const ComplexMatrix g = gaussian(rng, n, n);
    return HermitianMatrix(with_norm(0.5 * (g + g.adjoint()), scale));
}

} // namespace

InteractionParams random_params(SpaceDims dims, std::uint64_t seed,
                                const RandomParamsOptions& opts) {
    std::mt19937_64 rng(seed);
    const Eigen::Index n0 = dims.n0;
    const Eigen::Index nn = dims.n_env;
    HermitianMatrix h0 = random_hermitian(rng, n0, opts.scale);
    HermitianMatrix hs = random_hermitian(rng, nn + 1, opts.scale);
    std::vector<ComplexMatrix> v(static_cast<std::size_t>(nn), ComplexMatrix::Zero(n0, n0));
    const ComplexMatrix column = with_norm(gaussian(rng, n0 * nn, n0), opts.scale);
    if (opts.with_v) {
        for (Eigen::Index i = 0; i < nn; ++i) {
            v[static_cast<std::size_t>(i)] = column.middleRows(i * n0, n0);
        }
    }
    HermitianMatrix d = random_hermitian(rng, n0 * nn, opts.scale);
    if (!opts.with_d) {
        d = HermitianMatrix::zero(n0 * nn);
    }
    return {dims, std::move(h0), std::move(hs), std::move(v), std::move(d)};
}

} // namespace rqi

#include "rqi/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "rqi/fit.hpp"

namespace rqi {

InteractionParams::InteractionParams(SpaceDims dims_, HermitianMatrix h0_, HermitianMatrix hs_,
                                     std::vector<ComplexMatrix> v_, HermitianMatrix d_)
    : dims(dims_), h0(std::move(h0_)), hs(std::move(hs_)), v(std::move(v_)), d(std::move(d_)) {
    const Eigen::Index n0 = dims.n0;
    const Eigen::Index nn = dims.n_env;
    if (h0.size() != n0) {
        throw Error(ErrorKind::DimensionMismatch, "h0 must be n0 x n0");
    }
    if (hs.size() != nn + 1) {
        throw Error(ErrorKind::DimensionMismatch, "hs must be (N+1) x (N+1)");
    }
    if (static_cast<Eigen::Index>(v.size()) != nn) {
        throw Error(ErrorKind::DimensionMismatch, "v must hold N coupling operators");
    }
    for (const auto& vi : v) {
        if (vi.rows() != n0 || vi.cols() != n0) {
            throw Error(ErrorKind::DimensionMismatch, "each V_i must be n0 x n0");
        }
    }
    if (d.size() != n0 * nn) {
        throw Error(ErrorKind::DimensionMismatch, "d must be (n0 N) x (n0 N)");
    }
}

InteractionParams InteractionParams::zero(SpaceDims dims) {
    return {dims, HermitianMatrix::zero(dims.n0), HermitianMatrix::zero(dims.env_dim()),
            std::vector<ComplexMatrix>(static_cast<std::size_t>(dims.n_env),
                                       ComplexMatrix::Zero(dims.n0, dims.n0)),
            HermitianMatrix::zero(dims.n0 * dims.n_env)};
}

ComplexMatrix InteractionParams::v_column() const {
    ComplexMatrix col(dims.n0 * dims.n_env, dims.n0);
    for (Eigen::Index i = 0; i < dims.n_env; ++i) {
        col.middleRows(i * dims.n0, dims.n0) = v[static_cast<std::size_t>(i)];
    }
    return col;
}

ComplexMatrix InteractionParams::h_tilde() const {
    return h0.matrix() + hs.matrix()(0, 0) * ComplexMatrix::Identity(dims.n0, dims.n0);
}

ComplexMatrix InteractionParams::k_column() const {
    ComplexMatrix col(dims.n0 * dims.n_env, dims.n0);
    const ComplexMatrix id = ComplexMatrix::Identity(dims.n0, dims.n0);
    for (Eigen::Index j = 1; j <= dims.n_env; ++j) {
        col.middleRows((j - 1) * dims.n0, dims.n0) = hs.matrix()(j, 0) * id;
    }
    return col;
}

ComplexMatrix InteractionParams::k_row() const {
    ComplexMatrix row(dims.n0, dims.n0 * dims.n_env);
    const ComplexMatrix id = ComplexMatrix::Identity(dims.n0, dims.n0);
    for (Eigen::Index i = 1; i <= dims.n_env; ++i) {
        row.middleCols((i - 1) * dims.n0, dims.n0) = hs.matrix()(0, i) * id;
    }
    return row;
}

ComplexMatrix InteractionParams::m_matrix() const {
    const Eigen::Index nn = dims.n_env;
    const ComplexMatrix id = ComplexMatrix::Identity(dims.n0, dims.n0);
    const ComplexMatrix hs_excited = hs.matrix().bottomRightCorner(nn, nn);
    return kron(hs_excited, id) + kron(ComplexMatrix::Identity(nn, nn), h0.matrix());
}

QsdeCoefficients coefficients_from_structure(SpaceDims dims, const QsdeStructure& st) {
    const Eigen::Index n0 = dims.n0;
    const Eigen::Index nn = dims.n_env;
    if (st.k.size() != n0 || st.w.rows() != n0 * nn || st.w.cols() != n0 ||
        st.s.rows() != n0 * nn || st.s.cols() != n0 * nn) {
        throw Error(ErrorKind::DimensionMismatch, "K, W, S shapes do not match dims");
    }
    QsdeCoefficients c{dims, BlockOperator(dims), st};
    c.table.block(0, 0) = -(I_unit * st.k.matrix() + 0.5 * st.w.adjoint() * st.w);
    const ComplexMatrix annihilation = -st.w.adjoint() * st.s;
    const ComplexMatrix exchange = st.s - ComplexMatrix::Identity(n0 * nn, n0 * nn);
    for (Eigen::Index j = 1; j <= nn; ++j) {
        c.table.block(j, 0) = st.w.middleRows((j - 1) * n0, n0);
        c.table.block(0, j) = annihilation.middleCols((j - 1) * n0, n0);
        for (Eigen::Index i = 1; i <= nn; ++i) {
            c.table.block(j, i) = exchange.block((j - 1) * n0, (i - 1) * n0, n0, n0);
        }
    }
    return c;
}

HermitianMatrix build_hamiltonian(const InteractionParams& p, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(ErrorKind::InvalidTimestep, "timestep h must be positive");
    }
    const auto& dims = p.dims;
    const Eigen::Index n0 = dims.n0;
    const Eigen::Index env = dims.env_dim();
    ComplexMatrix flat = kron(ComplexMatrix::Identity(env, env), p.h0.matrix()) +
                         kron(p.hs.matrix(), ComplexMatrix::Identity(n0, n0));
    const double weak = 1.0 / std::sqrt(h);
    for (Eigen::Index i = 1; i <= dims.n_env; ++i) {
        const ComplexMatrix& vi = p.v[static_cast<std::size_t>(i - 1)];
        flat.block(i * n0, 0, n0, n0) += weak * vi;
        flat.block(0, i * n0, n0, n0) += weak * vi.adjoint();
    }
    flat.bottomRightCorner(n0 * dims.n_env, n0 * dims.n_env) += p.d.matrix() / h;
    return HermitianMatrix(flat);
}

BlockOperator unitary_step(const InteractionParams& p, double h) {
    const HermitianMatrix hamiltonian = build_hamiltonian(p, h);
    return flat_to_block(expm((-I_unit * h) * hamiltonian.matrix()), p.dims);
}

double lemma20_alpha(const InteractionParams& p) {
    double alpha = op_norm(p.h_tilde());
    alpha = std::max(alpha, op_norm(p.v_column()));
    alpha = std::max(alpha, op_norm(p.d.matrix()));
    alpha = std::max(alpha, op_norm(p.m_matrix()));
    alpha = std::max(alpha, op_norm(p.k_row()));
    alpha = std::max(alpha, op_norm(p.k_column()));
    return alpha;
}

Lemma20Result lemma20_series(const InteractionParams& p, double h, double tol) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(ErrorKind::InvalidTimestep, "timestep h must be positive");
    }
    const double alpha = lemma20_alpha(p);
    if (alpha * std::max(1.0, h) >= 20.0) {
        throw Error(ErrorKind::NormTooLarge,
                    "alpha * max(1, h) = " + std::to_string(alpha * std::max(1.0, h)) +
                        " is outside the series regime");
    }
    const Eigen::Index n0 = p.dims.n0;
    const Eigen::Index nn = n0 * p.dims.n_env;
    const double rh = std::sqrt(h);

    const ComplexMatrix ht = p.h_tilde();
    const ComplexMatrix vc = p.v_column();
    const ComplexMatrix vr = vc.adjoint();
    const ComplexMatrix& dm = p.d.matrix();
    const ComplexMatrix mm = p.m_matrix();
    const ComplexMatrix kr = p.k_row();
    const ComplexMatrix kc = p.k_column();

    // m = 1
    ComplexMatrix a = ht, b = vr, c = vc, dpow = dm;
    ComplexMatrix r1 = ComplexMatrix::Zero(n0, n0), r2 = kr, r3 = kc, r4 = mm;

    ComplexMatrix top_left = ComplexMatrix::Identity(n0, n0);
    ComplexMatrix top_right = ComplexMatrix::Zero(n0, nn);
    ComplexMatrix bottom_left = ComplexMatrix::Zero(nn, n0);
    ComplexMatrix bottom_right = ComplexMatrix::Identity(nn, nn);

    // ‖X_m‖ <= α^m, ‖R_m‖ <= 7^{m-1} α^m, so every term of the series is bounded by
    // (7α·max(1, h))^m / m!.
    const double beta = 7.0 * alpha * std::max(1.0, h);
    constexpr int kMaxTerms = 4000;
    cplx coef{1.0, 0.0};
    double bound_term = 1.0; // beta^m / m!
    int m = 1;
    for (; m <= kMaxTerms; ++m) {
        coef *= -I_unit / static_cast<double>(m);
        bound_term *= beta / static_cast<double>(m);
        top_left += coef * (h * a + h * rh * r1);
        top_right += coef * (rh * b + h * r2);
        bottom_left += coef * (rh * c + h * r3);
        bottom_right += coef * (dpow + h * r4);

        const double next = bound_term * beta / static_cast<double>(m + 1);
        const double ratio = beta / static_cast<double>(m + 2);
        if (ratio < 1.0 && next / (1.0 - ratio) < tol) {
            break;
        }

        ComplexMatrix a_next = vr * c;
        ComplexMatrix b_next = vr * dpow;
        ComplexMatrix c_next = dm * c;
        ComplexMatrix d_next = dm * dpow;
        ComplexMatrix r1_next = rh * (ht * a) + h * (ht * r1) + vr * r3 + kr * c + rh * (kr * r3);
        ComplexMatrix r2_next =
            rh * (ht * b) + h * (ht * r2) + rh * (vr * r4) + kr * dpow + h * (kr * r4);
        ComplexMatrix r3_next = rh * (vc * a) + h * (vc * r1) + dm * r3 + rh * (mm * c) +
                                h * (mm * r3) + h * (kc * a) + h * rh * (kc * r1);
        ComplexMatrix r4_next = vc * b + rh * (vc * r2) + rh * (kc * b) + h * (kc * r2) +
                                dm * r4 + mm * dpow + h * (mm * r4);
        a = std::move(a_next);
        b = std::move(b_next);
        c = std::move(c_next);
        dpow = std::move(d_next);
        r1 = std::move(r1_next);
        r2 = std::move(r2_next);
        r3 = std::move(r3_next);
        r4 = std::move(r4_next);
    }
    if (m > kMaxTerms) {
        throw Error(ErrorKind::NormTooLarge, "series did not reach the requested tolerance");
    }

    ComplexMatrix flat(n0 + nn, n0 + nn);
    flat.topLeftCorner(n0, n0) = top_left;
    flat.topRightCorner(n0, nn) = top_right;
    flat.bottomLeftCorner(nn, n0) = bottom_left;
    flat.bottomRightCorner(nn, nn) = bottom_right;
    return {flat_to_block(flat, p.dims), m};
}

BlockOperator lemma20_blocks(const InteractionParams& p, double h, double tol) {
    return lemma20_series(p, h, tol).step;
}

QsdeCoefficients limit_coefficients(const InteractionParams& p) {
    const ComplexMatrix vc = p.v_column();
    const ComplexMatrix vr = vc.adjoint();
    const ComplexMatrix s = hermitian_fn(p.d, ScalarFn::exp_minus_i);
    const ComplexMatrix phi1 = hermitian_fn(p.d, ScalarFn::phi1);
    const ComplexMatrix phi2 = hermitian_fn(p.d, ScalarFn::phi2);
    const ComplexMatrix psi = hermitian_fn(p.d, ScalarFn::psi);
    const ComplexMatrix ht = p.h_tilde();

    const ComplexMatrix w = phi1 * vc;
    HermitianMatrix k(ht + vr * psi * vc);

    const auto& dims = p.dims;
    const Eigen::Index n0 = dims.n0;
    const Eigen::Index nn = dims.n_env;
    QsdeCoefficients c{dims, BlockOperator(dims), QsdeStructure{k, w, s}};
    c.table.block(0, 0) = -I_unit * ht + vr * phi2 * vc;
    const ComplexMatrix annihilation = vr * phi1;
    const ComplexMatrix exchange = s - ComplexMatrix::Identity(n0 * nn, n0 * nn);
    for (Eigen::Index j = 1; j <= nn; ++j) {
        c.table.block(j, 0) = w.middleRows((j - 1) * n0, n0);
        c.table.block(0, j) = annihilation.middleCols((j - 1) * n0, n0);
        for (Eigen::Index i = 1; i <= nn; ++i) {
            c.table.block(j, i) = exchange.block((j - 1) * n0, (i - 1) * n0, n0, n0);
        }
    }
    return c;
}

namespace {

double scaling_exponent(Eigen::Index j, Eigen::Index i) {
    if (i == 0 && j == 0) {
        return 1.0;
    }
    if (i == 0 || j == 0) {
        return 0.5;
    }
    return 0.0;
}

} // namespace

HypothesisReport check_convergence_hypothesis(
    const std::function<BlockOperator(double)>& family, const QsdeCoefficients& c,
    const std::vector<double>& h_list) {
    for (std::size_t k = 0; k < h_list.size(); ++k) {
        if (!(h_list[k] > 0.0) || (k > 0 && !(h_list[k] < h_list[k - 1]))) {
            throw Error(ErrorKind::ValidationError,
                        "h_list must be positive and strictly decreasing");
        }
    }
    const auto& dims = c.dims;
    const ComplexMatrix id = ComplexMatrix::Identity(dims.n0, dims.n0);
    HypothesisReport report;
    std::vector<std::pair<double, double>> points;
    for (const double h : h_list) {
        const BlockOperator step = family(h);
        HypothesisRow row{h, 0.0, 0.0};
        for (Eigen::Index j = 0; j < dims.env_dim(); ++j) {
            for (Eigen::Index i = 0; i < dims.env_dim(); ++i) {
                ComplexMatrix diff = step.block(j, i);
                if (i == j) {
                    diff -= id;
                }
                diff /= std::pow(h, scaling_exponent(j, i));
                diff -= c.table.block(j, i);
                const Norms nrm = norms(diff);
                row.residual += nrm.operator_norm * nrm.operator_norm;
                row.residual_frobenius += nrm.frobenius * nrm.frobenius;
            }
        }
        report.rows.push_back(row);
        points.emplace_back(h, row.residual);
    }
    try {
        report.fitted_order = fit_order(points);
    } catch (const Error&) {
        report.fitted_order.reset();
    }
    return report;
}

HypothesisReport check_convergence_hypothesis(const InteractionParams& p,
                                              const std::vector<double>& h_list) {
    return check_convergence_hypothesis(
        [&p](double h) { return unitary_step(p, h); }, limit_coefficients(p), h_list);
}

StructureDiagnostics unitarity_structure_check(const QsdeCoefficients& c, double tol) {
    const auto& dims = c.dims;
    const Eigen::Index n0 = dims.n0;
    const Eigen::Index nn = n0 * dims.n_env;
    ComplexMatrix s(nn, nn);
    ComplexMatrix w(nn, n0);
    ComplexMatrix annihilation(n0, nn);
    for (Eigen::Index j = 1; j <= dims.n_env; ++j) {
        w.middleRows((j - 1) * n0, n0) = c.table.block(j, 0);
        annihilation.middleCols((j - 1) * n0, n0) = c.table.block(0, j);
        for (Eigen::Index i = 1; i <= dims.n_env; ++i) {
            s.block((j - 1) * n0, (i - 1) * n0, n0, n0) = c.table.block(j, i);
        }
    }
    s += ComplexMatrix::Identity(nn, nn);
    const ComplexMatrix& drift = c.table.block(0, 0);
    const ComplexMatrix wsq = w.adjoint() * w;
    const ComplexMatrix k = I_unit * (drift + 0.5 * wsq);

    StructureDiagnostics diag;
    const ComplexMatrix id = ComplexMatrix::Identity(nn, nn);
    diag.s_isometry = op_norm(s.adjoint() * s - id);
    diag.s_coisometry = op_norm(s * s.adjoint() - id);
    diag.annihilation_defect = op_norm(annihilation + w.adjoint() * s);
    diag.drift_defect = op_norm(drift + I_unit * k + 0.5 * wsq);
    diag.k_hermiticity = op_norm(k - k.adjoint());
    diag.pass = diag.s_isometry <= tol && diag.s_coisometry <= tol &&
                diag.annihilation_defect <= tol && diag.drift_defect <= tol &&
                diag.k_hermiticity <= tol;
    return diag;
}

} // namespace rqi

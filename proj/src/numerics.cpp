#include "rqi/numerics.hpp"

#include <array>
#include <cmath>

namespace rqi {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::EigenFailure: return "EigenFailure";
    case ErrorKind::InvalidStep: return "InvalidStep";
    case ErrorKind::InvalidTimestep: return "InvalidTimestep";
    case ErrorKind::SiteOutOfRange: return "SiteOutOfRange";
    case ErrorKind::StateTooLarge: return "StateTooLarge";
    case ErrorKind::NormTooLarge: return "NormTooLarge";
    case ErrorKind::MismatchedTimestep: return "MismatchedTimestep";
    case ErrorKind::NotAnIsometry: return "NotAnIsometry";
    case ErrorKind::CompletionFailure: return "CompletionFailure";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::InvalidProjectionFamily: return "InvalidProjectionFamily";
    case ErrorKind::InsufficientPoints: return "InsufficientPoints";
    case ErrorKind::NonPositiveValue: return "NonPositiveValue";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

bool is_validation_error(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NonSquare:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NotHermitian:
    case ErrorKind::InvalidStep:
    case ErrorKind::InvalidTimestep:
    case ErrorKind::SiteOutOfRange:
    case ErrorKind::MismatchedTimestep:
    case ErrorKind::NotAnIsometry:
    case ErrorKind::InvalidProjectionFamily:
    case ErrorKind::ParseError:
    case ErrorKind::SchemaError:
    case ErrorKind::ValidationError:
        return true;
    default:
        return false;
    }
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::NonSquare, "Hermitian matrix must be square");
    }
    const double residual = (m - m.adjoint()).norm();
    if (residual > 1e-6 * (1.0 + m.norm())) {
        throw Error(ErrorKind::NotHermitian,
                    "residual ||M - M^*||_F = " + std::to_string(residual));
    }
    m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index n) {
    return HermitianMatrix(ComplexMatrix::Zero(n, n));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

namespace {

// Higham (2005) degree-13 Padé coefficients and scaling threshold.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

double one_norm(const ComplexMatrix& a) {
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

} // namespace

ComplexMatrix expm(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorKind::NonSquare, "expm requires a square matrix");
    }
    const Eigen::Index n = a.rows();
    if (n == 0) {
        return a;
    }
    const double nrm = one_norm(a);
    if (nrm == 0.0) {
        return ComplexMatrix::Identity(n, n);
    }
    int squarings = 0;
    if (nrm > kTheta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / kTheta13)));
    }
    const ComplexMatrix x = a / std::ldexp(1.0, squarings);
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix x2 = x * x;
    const ComplexMatrix x4 = x2 * x2;
    const ComplexMatrix x6 = x4 * x2;
    const auto& b = kPade13;

    const ComplexMatrix u_inner = b[13] * x6 + b[11] * x4 + b[9] * x2;
    const ComplexMatrix u =
        x * (x6 * u_inner + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id);
    const ComplexMatrix v_inner = b[12] * x6 + b[10] * x4 + b[8] * x2;
    const ComplexMatrix v = x6 * v_inner + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

    ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k) {
        r = r * r;
    }
    return r;
}

namespace {

// x − sin x without cancellation for small |x|.
double x_minus_sin(double x) {
    if (std::abs(x) >= 1.0) {
        return x - std::sin(x);
    }
    // x^3/3! − x^5/5! + ...; 12 terms reach double precision for |x| < 1.
    const double x2 = x * x;
    double term = x * x2 / 6.0;
    double sum = 0.0;
    for (int k = 1; k <= 12; ++k) {
        sum += term;
        term *= -x2 / static_cast<double>((2 * k + 2) * (2 * k + 3));
    }
    return sum;
}

} // namespace

cplx phi_scalar(double x, ScalarFn f) {
    constexpr double kTaylorBelow = 1e-4;
    constexpr int kTerms = 8;
    switch (f) {
    case ScalarFn::identity:
        return {x, 0.0};
    case ScalarFn::exp_minus_i:
        return std::exp(-I_unit * x);
    case ScalarFn::sin:
        return {std::sin(x), 0.0};
    case ScalarFn::phi1: {
        if (std::abs(x) < kTaylorBelow) {
            // sum_{k>=1} (-i)^k x^{k-1} / k!
            cplx sum{0.0, 0.0};
            cplx term = -I_unit;
            for (int k = 1; k <= kTerms; ++k) {
                sum += term;
                term *= -I_unit * x / static_cast<double>(k + 1);
            }
            return sum;
        }
        const double s = std::sin(0.5 * x);
        return cplx{-2.0 * s * s, -std::sin(x)} / x;
    }
    case ScalarFn::phi2: {
        if (std::abs(x) < kTaylorBelow) {
            // sum_{k>=2} (-i)^k x^{k-2} / k!
            cplx sum{0.0, 0.0};
            cplx term{-0.5, 0.0};
            for (int k = 2; k < kTerms + 2; ++k) {
                sum += term;
                term *= -I_unit * x / static_cast<double>(k + 1);
            }
            return sum;
        }
        const double s = std::sin(0.5 * x);
        return cplx{-2.0 * s * s, x_minus_sin(x)} / (x * x);
    }
    case ScalarFn::psi: {
        if (std::abs(x) < kTaylorBelow) {
            // sum_{k>=1} (-1)^k x^{2k-1} / (2k+1)!
            double sum = 0.0;
            double term = -x / 6.0;
            for (int k = 1; k <= kTerms; ++k) {
                sum += term;
                term *= -x * x / static_cast<double>((2 * k + 2) * (2 * k + 3));
            }
            return {sum, 0.0};
        }
        return {-x_minus_sin(x) / (x * x), 0.0};
    }
    }
    return {0.0, 0.0};
}

ComplexMatrix hermitian_fn(const HermitianMatrix& d, ScalarFn f) {
    if (f == ScalarFn::identity) {
        return d.matrix();
    }
    const Eigen::Index n = d.size();
    if (n == 0) {
        return d.matrix();
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(d.matrix());
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::EigenFailure, "Hermitian eigendecomposition did not converge");
    }
    const auto& q = solver.eigenvectors();
    ComplexVector fvals(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        fvals(k) = phi_scalar(solver.eigenvalues()(k), f);
    }
    return q * fvals.asDiagonal() * q.adjoint();
}

Norms norms(const ComplexMatrix& a) {
    return {op_norm(a), a.norm()};
}

double op_norm(const ComplexMatrix& a) {
    if (a.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues()(0);
}

namespace {

std::size_t step_count(double t_end, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(ErrorKind::InvalidStep, "ODE step must be positive and finite");
    }
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
        throw Error(ErrorKind::InvalidStep, "ODE end time must be nonnegative and finite");
    }
    return static_cast<std::size_t>(std::ceil(t_end / step - 1e-9));
}

} // namespace

ComplexMatrix ode_solve_linear(const MatrixGenerator& g, const ComplexMatrix& m0,
                               double t_end, double step) {
    const std::size_t n = step_count(t_end, step);
    ComplexMatrix m = m0;
    if (n == 0) {
        return m;
    }
    const double dt = t_end / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = dt * static_cast<double>(k);
        const ComplexMatrix g0 = g(t);
        const ComplexMatrix gh = g(t + 0.5 * dt);
        const ComplexMatrix g1 = g(t + dt);
        const ComplexMatrix k1 = g0 * m;
        const ComplexMatrix k2 = gh * (m + 0.5 * dt * k1);
        const ComplexMatrix k3 = gh * (m + 0.5 * dt * k2);
        const ComplexMatrix k4 = g1 * (m + dt * k3);
        m += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return m;
}

ComplexMatrix ode_solve_constant(const ComplexMatrix& g, const ComplexMatrix& m0,
                                 double t_end, double step) {
    const std::size_t n = step_count(t_end, step);
    if (n == 0) {
        return m0;
    }
    const double dt = t_end / static_cast<double>(n);
    // For constant g one RK4 step is the degree-4 Taylor polynomial of e^{dt g}.
    const Eigen::Index d = g.rows();
    const ComplexMatrix a = dt * g;
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix stepper = ComplexMatrix::Identity(d, d) + a + a2 / 2.0 +
                                  a2 * a / 6.0 + a2 * a2 / 24.0;
    ComplexMatrix m = m0;
    for (std::size_t k = 0; k < n; ++k) {
        m = stepper * m;
    }
    return m;
}

} // namespace rqi

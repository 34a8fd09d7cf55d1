// numerics.hpp — dense complex linear algebra used throughout the library
//
// Matrices are Eigen::MatrixXcd (complex<double>, column-major storage).
// Hermitian inputs are wrapped in HermitianMatrix so that the symmetry
// invariant is established once, at construction.

#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "rqi/error.hpp"

namespace rqi {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr cplx I_unit{0.0, 1.0};

class HermitianMatrix {
public:
    HermitianMatrix() = default;

    // Symmetrizes m as (m + m†)/2. Throws NotHermitian when the residual
    // ‖m − m†‖_F exceeds 1e-6·(1 + ‖m‖_F), NonSquare for rectangular input.
    explicit HermitianMatrix(const ComplexMatrix& m);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Eigen::Index size() const noexcept { return m_.rows(); }

    static HermitianMatrix zero(Eigen::Index n);

private:
    ComplexMatrix m_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Scaling and squaring with a degree-13 Padé core.
ComplexMatrix expm(const ComplexMatrix& a);

enum class ScalarFn {
    identity,
    exp_minus_i, // e^{-ix}
    sin,
    phi1,        // (e^{-ix} - 1) / x
    phi2,        // (e^{-ix} - 1 + ix) / x^2
    psi,         // (sin x - x) / x^2
};

// Removable singularities at x = 0 are evaluated by Taylor series for |x| < 1e-4.
cplx phi_scalar(double x, ScalarFn f);

// Q f(Λ) Q† for d = Q Λ Q†.
ComplexMatrix hermitian_fn(const HermitianMatrix& d, ScalarFn f);

struct Norms {
    double operator_norm;
    double frobenius;
};

Norms norms(const ComplexMatrix& a);
double op_norm(const ComplexMatrix& a);

using MatrixGenerator = std::function<ComplexMatrix(double)>;

// Classical RK4 on M'(t) = g(t) M(t), using ceil(t_end/step) equal steps.
ComplexMatrix ode_solve_linear(const MatrixGenerator& g, const ComplexMatrix& m0,
                               double t_end, double step);

// Same scheme with g constant on [0, t_end]; avoids std::function overhead
// in the hot sweep loops.
ComplexMatrix ode_solve_constant(const ComplexMatrix& g, const ComplexMatrix& m0,
                                 double t_end, double step);

} // namespace rqi

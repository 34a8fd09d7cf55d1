#include "doctest.h"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "rqi/hamiltonian.hpp"
#include "rqi/scenarios.hpp"
#include "support.hpp"

using namespace rqi;
using rqi::test::dist;

namespace {

// Eigen's generic matrix functions, used as an independent oracle for D-functions.
ComplexMatrix oracle_exp_minus_i(const ComplexMatrix& d) { return (-I_unit * d).exp(); }

ComplexMatrix oracle_phi1_times(const ComplexMatrix& d, const ComplexMatrix& v) {
    // (e^{-iD} − I) D^{-1} V via a solve; valid when D is invertible.
    const Eigen::Index n = d.rows();
    return d.fullPivLu().solve((oracle_exp_minus_i(d) - ComplexMatrix::Identity(n, n)) * v);
}

double max_block_distance(const BlockOperator& a, const BlockOperator& b) {
    double worst = 0.0;
    const Eigen::Index e = a.dims().env_dim();
    for (Eigen::Index j = 0; j < e; ++j)
        for (Eigen::Index i = 0; i < e; ++i)
            worst = std::max(worst, dist(a.block(j, i), b.block(j, i)));
    return worst;
}

} // namespace

TEST_CASE("build_hamiltonian: decoupled case is H0 on every sector") {
    std::mt19937_64 rng(1);
    const SpaceDims dims(2, 2);
    InteractionParams p = InteractionParams::zero(dims);
    p.h0 = HermitianMatrix(test::random_hermitian(rng, 2));
    const ComplexMatrix h = build_hamiltonian(p, 0.01).matrix();
    CHECK(dist(h, kron(ComplexMatrix::Identity(3, 3), p.h0.matrix())) < 1e-15);
    CHECK_THROWS_AS(build_hamiltonian(p, 0.0), Error);
}

TEST_CASE("build_hamiltonian: measurement coupling") {
    const ProjectionFamily proj = diagonal_projections(2);
    const InteractionParams p = von_neumann_params(proj);
    const double h = 0.01;
    const BlockOperator b = flat_to_block(build_hamiltonian(p, h).matrix(), p.dims);
    for (Eigen::Index k = 1; k <= 2; ++k) {
        const ComplexMatrix& pk = proj.projections[static_cast<std::size_t>(k - 1)];
        CHECK(dist(b.block(k, 0), I_unit / std::sqrt(h) * pk) < 1e-12);
        CHECK(dist(b.block(0, k), -I_unit / std::sqrt(h) * pk) < 1e-12);
        CHECK(op_norm(b.block(k, k)) < 1e-15);
    }
    CHECK(op_norm(b.block(0, 0)) < 1e-15);
}

TEST_CASE("build_hamiltonian: block structure for random parameters") {
    const SpaceDims dims(2, 2);
    const InteractionParams p = random_params(dims, 5);
    const double h = 0.03;
    const ComplexMatrix flat = build_hamiltonian(p, h).matrix();
    CHECK(dist(flat, flat.adjoint()) < 1e-12);

    const BlockOperator b = flat_to_block(flat, dims);
    const ComplexMatrix& hs = p.hs.matrix();
    CHECK(dist(b.block(0, 0), p.h0.matrix() + hs(0, 0) * ComplexMatrix::Identity(2, 2)) < 1e-14);
    for (Eigen::Index j = 1; j <= 2; ++j) {
        const ComplexMatrix& vj = p.v[static_cast<std::size_t>(j - 1)];
        CHECK(dist(b.block(j, 0), vj / std::sqrt(h) + hs(j, 0) * ComplexMatrix::Identity(2, 2)) <
              1e-13);
        CHECK(dist(b.block(0, j),
                   vj.adjoint() / std::sqrt(h) + hs(0, j) * ComplexMatrix::Identity(2, 2)) < 1e-13);
        for (Eigen::Index i = 1; i <= 2; ++i) {
            ComplexMatrix expected = p.d.matrix().block(2 * (j - 1), 2 * (i - 1), 2, 2) / h +
                                     hs(j, i) * ComplexMatrix::Identity(2, 2);
            if (i == j) expected += p.h0.matrix();
            CHECK(dist(b.block(j, i), expected) < 1e-12);
        }
    }
}

TEST_CASE("unitary_step: two-level Hamiltonian reproduces the exchange rotation") {
    for (double h : {1e-1, 1e-2, 1e-4}) {
        const BlockOperator l = unitary_step(two_level_params(), h);
        CHECK(max_block_distance(l, two_level_step(h)) < 1e-13);
    }
}

TEST_CASE("unitary_step: measurement blocks") {
    const ProjectionFamily proj = diagonal_projections(3);
    const InteractionParams p = von_neumann_params(proj);
    const double h = 0.02, c = std::cos(std::sqrt(h)), s = std::sin(std::sqrt(h));
    const BlockOperator l = unitary_step(p, h);
    const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
    CHECK(dist(l.block(0, 0), c * id) < 1e-13);
    for (Eigen::Index k = 1; k <= 3; ++k) {
        const ComplexMatrix& pk = proj.projections[static_cast<std::size_t>(k - 1)];
        CHECK(dist(l.block(k, 0), s * pk) < 1e-13);
        CHECK(dist(l.block(0, k), -s * pk) < 1e-13);
        CHECK(dist(l.block(k, k), c * pk + (id - pk)) < 1e-13);
    }
}

TEST_CASE("unitary_step: unitary and continuous at h -> 0") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const InteractionParams p = random_params(SpaceDims(2, 2), seed);
        const ComplexMatrix u = block_to_flat(unitary_step(p, 1e-3));
        CHECK(dist(u.adjoint() * u, ComplexMatrix::Identity(6, 6)) < 1e-10);
    }
    // Without V and D, the step tends to the identity.
    InteractionParams p = InteractionParams::zero(SpaceDims(2, 1));
    p.h0 = HermitianMatrix(ComplexMatrix::Identity(2, 2));
    double prev = 1.0;
    for (double h : {1e-2, 1e-4, 1e-6}) {
        const double d = op_norm(block_to_flat(unitary_step(p, h)) - ComplexMatrix::Identity(4, 4));
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("lemma20_blocks: decoupled case") {
    std::mt19937_64 rng(2);
    InteractionParams p = InteractionParams::zero(SpaceDims(2, 2));
    ComplexMatrix h0 = test::random_hermitian(rng, 2);
    p.h0 = HermitianMatrix(h0 * (0.8 / op_norm(h0)));
    const double h = 0.01;
    const BlockOperator l = lemma20_blocks(p, h, 1e-12);
    const ComplexMatrix e = expm(-I_unit * h * p.h0.matrix());
    for (Eigen::Index j = 0; j < 3; ++j)
        for (Eigen::Index i = 0; i < 3; ++i)
            CHECK(dist(l.block(j, i), i == j ? e : ComplexMatrix::Zero(2, 2)) < 1e-12);
}

TEST_CASE("lemma20_blocks: agrees with the exponential for alpha <= 1") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const InteractionParams p = random_params(SpaceDims(2, 2), seed);
        REQUIRE(lemma20_alpha(p) <= 1.0);
        for (double h : {1e-2, 1e-3}) {
            const Lemma20Result r = lemma20_series(p, h, 1e-10);
            CHECK(r.terms > 0);
            CHECK(max_block_distance(r.step, unitary_step(p, h)) <= 2e-10);
        }
    }
    // Also at h = 1, where all three scales coincide.
    const InteractionParams p = random_params(SpaceDims(3, 1), 9);
    CHECK(max_block_distance(lemma20_blocks(p, 1.0, 1e-12), unitary_step(p, 1.0)) < 1e-10);
}

TEST_CASE("lemma20_blocks: rejects large norms") {
    RandomParamsOptions big;
    big.scale = 30.0;
    const InteractionParams p = random_params(SpaceDims(2, 1), 1, big);
    try {
        lemma20_blocks(p, 0.01, 1e-10);
        FAIL("expected NormTooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NormTooLarge);
    }
}

TEST_CASE("lemma20_blocks: leading vacuum block") {
    const InteractionParams p = random_params(SpaceDims(2, 2), 3);
    const ComplexMatrix v = p.v_column();
    const ComplexMatrix phi2 = hermitian_fn(p.d, ScalarFn::phi2);
    std::vector<double> rem;
    for (double h : {1e-2, 1e-4}) {
        const ComplexMatrix l00 = lemma20_blocks(p, h, 1e-13).block(0, 0);
        const ComplexMatrix approx = ComplexMatrix::Identity(2, 2) - I_unit * h * p.h_tilde() +
                                     h * v.adjoint() * phi2 * v;
        rem.push_back(op_norm(l00 - approx) / std::pow(h, 1.5));
    }
    // Remainder / h^{3/2} stays bounded as h shrinks.
    CHECK(rem[1] < 2.0 * rem[0] + 1e-6);
}

TEST_CASE("limit_coefficients: weak coupling (D = 0)") {
    std::mt19937_64 rng(4);
    const SpaceDims dims(2, 2);
    RandomParamsOptions opts;
    opts.with_d = false;
    const InteractionParams p = random_params(dims, 11, opts);
    const QsdeCoefficients c = limit_coefficients(p);
    REQUIRE(c.structured.has_value());
    const ComplexMatrix v = p.v_column();
    CHECK(dist(c.structured->s, ComplexMatrix::Identity(4, 4)) < 1e-15);
    CHECK(dist(c.structured->w, -I_unit * v) < 1e-15);
    CHECK(dist(c.structured->k.matrix(), p.h_tilde()) < 1e-15);
    CHECK(dist(c.table.block(0, 0), -I_unit * p.h_tilde() - 0.5 * v.adjoint() * v) < 1e-14);
    for (Eigen::Index j = 1; j <= 2; ++j) {
        const ComplexMatrix& vj = p.v[static_cast<std::size_t>(j - 1)];
        CHECK(dist(c.table.block(j, 0), -I_unit * vj) < 1e-15);
        CHECK(dist(c.table.block(0, j), -I_unit * vj.adjoint()) < 1e-15);
        for (Eigen::Index i = 1; i <= 2; ++i) CHECK(op_norm(c.table.block(j, i)) <= 1e-12);
    }
}

TEST_CASE("limit_coefficients: anti-Hermitian couplings") {
    std::mt19937_64 rng(5);
    const SpaceDims dims(2, 2);
    std::vector<ComplexMatrix> v;
    for (int k = 0; k < 2; ++k) {
        const ComplexMatrix g = test::random_matrix(rng, 2, 2);
        v.push_back(0.25 * (g - g.adjoint()));
    }
    const InteractionParams p = weak_coupling_params(HermitianMatrix::zero(2),
                                                     HermitianMatrix::zero(3), v);
    const QsdeCoefficients c = limit_coefficients(p);
    for (Eigen::Index i = 1; i <= 2; ++i) {
        // L_0^i = −Σ_k (L_k^0)* S_i^k, which for S = I, W = −iV, V* = −V is i·V_i.
        ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
        for (Eigen::Index k = 1; k <= 2; ++k) {
            const ComplexMatrix ski = k == i ? ComplexMatrix::Identity(2, 2).eval()
                                             : ComplexMatrix::Zero(2, 2).eval();
            expected -= c.table.block(k, 0).adjoint() * ski;
        }
        CHECK(dist(c.table.block(0, i), expected) < 1e-12);
        CHECK(dist(c.table.block(0, i), I_unit * v[static_cast<std::size_t>(i - 1)]) < 1e-12);
    }
}

TEST_CASE("limit_coefficients: low density (V = 0)") {
    const SpaceDims dims(2, 2);
    RandomParamsOptions opts;
    opts.with_v = false;
    opts.scale = 0.9;
    const InteractionParams p = random_params(dims, 12, opts);
    const QsdeCoefficients c = limit_coefficients(p);
    const ComplexMatrix s = oracle_exp_minus_i(p.d.matrix());
    CHECK(dist(c.structured->s, s) < 1e-12);
    CHECK(op_norm(c.structured->w) == 0.0);
    CHECK(dist(c.structured->k.matrix(), p.h_tilde()) < 1e-15);
    CHECK(c.table.block(0, 0) == (-I_unit * p.h_tilde()).eval());
    for (Eigen::Index j = 1; j <= 2; ++j)
        for (Eigen::Index i = 1; i <= 2; ++i) {
            ComplexMatrix expected = s.block(2 * (j - 1), 2 * (i - 1), 2, 2);
            if (i == j) expected -= ComplexMatrix::Identity(2, 2);
            CHECK(dist(c.table.block(j, i), expected) < 1e-12);
        }
}

TEST_CASE("limit_coefficients: measurement model") {
    const ProjectionFamily proj = diagonal_projections(2);
    const QsdeCoefficients c = limit_coefficients(von_neumann_params(proj));
    CHECK(dist(c.table.block(0, 0), -0.5 * ComplexMatrix::Identity(2, 2)) < 1e-15);
    for (Eigen::Index k = 1; k <= 2; ++k) {
        const ComplexMatrix& pk = proj.projections[static_cast<std::size_t>(k - 1)];
        CHECK(dist(c.table.block(k, 0), pk) < 1e-15);
        CHECK(dist(c.table.block(0, k), -pk) < 1e-15);
    }
}

TEST_CASE("limit_coefficients: general case against an independent D-function oracle") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        RandomParamsOptions opts;
        opts.scale = 0.9;
        const InteractionParams p = random_params(SpaceDims(2, 2), seed, opts);
        const QsdeCoefficients c = limit_coefficients(p);
        const ComplexMatrix v = p.v_column();
        CHECK(dist(c.structured->s, oracle_exp_minus_i(p.d.matrix())) < 1e-12);
        CHECK(dist(c.structured->w, oracle_phi1_times(p.d.matrix(), v)) < 1e-9);

        // −(iK + ½W*W) = −iH̃ + V*phi2(D)V
        const ComplexMatrix& k = c.structured->k.matrix();
        const ComplexMatrix& w = c.structured->w;
        const ComplexMatrix lhs = -(I_unit * k + 0.5 * w.adjoint() * w);
        const ComplexMatrix rhs =
            -I_unit * p.h_tilde() + v.adjoint() * hermitian_fn(p.d, ScalarFn::phi2) * v;
        CHECK(dist(lhs, rhs) < 1e-10);
        CHECK(dist(c.table.block(0, 0), rhs) < 1e-12);

        // K includes V* D^{-2}(sin D − D) V, checked with Eigen's sin.
        const ComplexMatrix d = p.d.matrix();
        const ComplexMatrix dinv = d.inverse();
        const ComplexMatrix corr = v.adjoint() * dinv * dinv * (d.sin() - d) * v;
        CHECK(dist(k, p.h_tilde() + corr) < 1e-9);

        const StructureDiagnostics diag = unitarity_structure_check(c, 1e-10);
        CHECK(diag.pass);
    }
}

TEST_CASE("coefficients_from_structure round trip") {
    const InteractionParams p = random_params(SpaceDims(3, 2), 21);
    const QsdeCoefficients c = limit_coefficients(p);
    const QsdeCoefficients r = coefficients_from_structure(p.dims, *c.structured);
    CHECK(max_block_distance(c.table, r.table) < 1e-12);
}

TEST_CASE("unitarity_structure_check") {
    const SpaceDims dims(2, 2);
    QsdeCoefficients zero{dims, BlockOperator(dims), std::nullopt};
    CHECK(unitarity_structure_check(zero, 1e-12).pass);

    QsdeCoefficients c = limit_coefficients(random_params(dims, 8));
    CHECK(unitarity_structure_check(c, 1e-10).pass);
    c.structured.reset();
    CHECK(unitarity_structure_check(c, 1e-10).pass);
    c.table.block(1, 2)(0, 1) += 1e-3;
    CHECK_FALSE(unitarity_structure_check(c, 1e-6).pass);
}

TEST_CASE("check_convergence_hypothesis") {
    // Two-level: (𝕃₀⁰ − I)/h → diag(0, −½), 𝕃₁⁰/√h → lowering.
    const InteractionParams tl = two_level_params();
    const QsdeCoefficients tc = limit_coefficients(tl);
    ComplexMatrix half = ComplexMatrix::Zero(2, 2);
    half(1, 1) = -0.5;
    CHECK(dist(tc.table.block(0, 0), half) < 1e-15);
    CHECK(dist(tc.table.block(1, 0), two_level_lowering()) < 1e-15);
    CHECK(dist(tc.table.block(0, 1), -two_level_lowering().adjoint()) < 1e-15);
    CHECK(op_norm(tc.table.block(1, 1)) < 1e-15);
    const HypothesisReport tr = check_convergence_hypothesis(tl, {1e-2, 1e-3, 1e-4});
    CHECK(tr.rows.back().residual < 1e-3);

    // Decoupled: vacuum block ‖(e^{−ihH0} − I)/h + iH0‖² plus exchange block ‖e^{−ihH0} − I‖², both O(h²).
    InteractionParams p = InteractionParams::zero(SpaceDims(2, 1));
    ComplexMatrix h0(2, 2);
    h0 << 0.3, cplx{0, 0.2}, cplx{0, -0.2}, -0.1;
    p.h0 = HermitianMatrix(h0);
    const HypothesisReport r = check_convergence_hypothesis(p, {1e-1, 1e-2, 1e-3});
    for (const auto& row : r.rows) {
        const ComplexMatrix e = expm(-I_unit * row.h * h0);
        const double n = op_norm((e - ComplexMatrix::Identity(2, 2)) / row.h + I_unit * h0);
        const double m = op_norm(e - ComplexMatrix::Identity(2, 2));
        CHECK(row.residual == doctest::Approx(n * n + m * m).epsilon(1e-6));
    }
    REQUIRE(r.fitted_order.has_value());
    CHECK(*r.fitted_order == doctest::Approx(2.0).epsilon(0.02));

    // Random parameters: O(√h) convergence.
    const HypothesisReport rr =
        check_convergence_hypothesis(random_params(SpaceDims(2, 2), 4), {1e-2, 1e-3, 1e-4});
    REQUIRE(rr.fitted_order.has_value());
    CHECK(*rr.fitted_order >= 0.4);
    CHECK(rr.rows[2].residual < rr.rows[0].residual / 3.0);

    CHECK_THROWS_AS(check_convergence_hypothesis(p, {1e-3, 1e-2}), Error);
}

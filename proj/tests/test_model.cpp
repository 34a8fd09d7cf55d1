#include "doctest.h"

#include <cmath>

#include "rqi/model.hpp"
#include "rqi/scenarios.hpp"
#include "support.hpp"

using namespace rqi;
using rqi::test::dist;

namespace {

BlockOperator random_unitary_block(std::mt19937_64& rng, SpaceDims dims) {
    return flat_to_block(test::random_unitary(rng, dims.flat_dim()), dims);
}

// Dense Kronecker oracle: flat operator l acting on (system, site k) of an n-site chain.
ComplexMatrix embed(const BlockOperator& l, std::size_t site, std::size_t n_sites) {
    const SpaceDims dims = l.dims();
    const Eigen::Index n0 = dims.n0, e = dims.env_dim();
    Eigen::Index dim = n0;
    for (std::size_t k = 0; k < n_sites; ++k) dim *= e;
    const ComplexMatrix flat = block_to_flat(l);
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    Eigen::Index stride = 1;
    for (std::size_t k = 1; k < site; ++k) stride *= e;
    for (Eigen::Index col = 0; col < dim; ++col) {
        const Eigen::Index s = col % n0;
        const Eigen::Index rest = col / n0;
        const Eigen::Index ek = (rest / stride) % e;
        const Eigen::Index base = rest - ek * stride;
        for (Eigen::Index s2 = 0; s2 < n0; ++s2)
            for (Eigen::Index e2 = 0; e2 < e; ++e2)
                out(s2 + n0 * (base + e2 * stride), col) = flat(s2 + n0 * e2, s + n0 * ek);
    }
    return out;
}

} // namespace

TEST_CASE("SpaceDims validation") {
    CHECK(SpaceDims(2, 3).flat_dim() == 8);
    CHECK_THROWS_AS(SpaceDims(0, 1), Error);
    CHECK_THROWS_AS(SpaceDims(1, 0), Error);
}

TEST_CASE("block/flat conversion") {
    const SpaceDims dims(2, 2);
    CHECK(block_to_flat(BlockOperator::identity(dims)) == ComplexMatrix::Identity(6, 6));

    std::mt19937_64 rng(1);
    const ComplexMatrix m = test::random_matrix(rng, 6, 6);
    const BlockOperator b = flat_to_block(m, dims);
    CHECK(block_to_flat(b) == m);
    for (Eigen::Index j = 0; j < 3; ++j)
        for (Eigen::Index i = 0; i < 3; ++i)
            for (Eigen::Index r = 0; r < 2; ++r)
                for (Eigen::Index s = 0; s < 2; ++s)
                    CHECK(b.block(j, i)(r, s) == m(r + 2 * j, s + 2 * i));

    CHECK_THROWS_AS(flat_to_block(ComplexMatrix::Zero(5, 5), dims), Error);
}

TEST_CASE("two-level blocks flatten to the exchange rotation") {
    const double h = 0.04, c = std::cos(0.2), s = std::sin(0.2);
    ComplexMatrix expected(4, 4);
    expected << 1, 0, 0, 0,
                0, c, -s, 0,
                0, s, c, 0,
                0, 0, 0, 1;
    CHECK(dist(block_to_flat(two_level_step(h)), expected) < 1e-15);
}

TEST_CASE("site operators satisfy the basic relations") {
    for (Eigen::Index n_env = 1; n_env <= 3; ++n_env) {
        const SpaceDims dims(1, n_env);
        const ChainState omega = ChainState::basis(dims, 0, {0});
        for (Eigen::Index i = 0; i <= n_env; ++i) {
            for (Eigen::Index j = 0; j <= n_env; ++j) {
                for (Eigen::Index k = 0; k <= n_env; ++k) {
                    const ChainState xk = ChainState::basis(dims, 0, {k});
                    const ChainState out = toy_op_apply(i, j, 1, xk);
                    const ChainState expected =
                        i == k ? ChainState::basis(dims, 0, {j}) : ChainState::zeros(dims, 1);
                    CHECK(out.amplitudes == expected.amplitudes);
                }
            }
            // a_i^0 Ω = X^i
            CHECK(toy_op_apply(0, i, 1, omega).amplitudes ==
                  ChainState::basis(dims, 0, {i}).amplitudes);
        }
    }
}

TEST_CASE("site operators on multi-site chains") {
    const SpaceDims dims(2, 2);
    const ChainState excited = ChainState::basis(dims, 1, {0, 2, 0});
    const ChainState vacuum = ChainState::basis(dims, 1, {0, 0, 0});
    CHECK(toy_op_apply(2, 0, 2, excited).amplitudes == vacuum.amplitudes);
    CHECK(toy_op_apply(0, 2, 2, vacuum).amplitudes == excited.amplitudes);
    CHECK(toy_op_apply(0, 0, 2, excited).amplitudes.norm() == 0.0);
    CHECK_THROWS_AS(toy_op_apply(0, 0, 4, excited), Error);
    CHECK_THROWS_AS(toy_op_apply(0, 0, 0, excited), Error);
}

TEST_CASE("chain_apply_site against the Kronecker oracle") {
    std::mt19937_64 rng(2);
    const SpaceDims dims(2, 1);
    const BlockOperator l1 = random_unitary_block(rng, dims);
    const BlockOperator l2 = random_unitary_block(rng, dims);

    ChainState one = ChainState::zeros(dims, 1);
    one.amplitudes = test::random_matrix(rng, 4, 1);
    CHECK(dist(chain_apply_site(l1, 1, one).amplitudes, block_to_flat(l1) * one.amplitudes) <
          1e-14);
    CHECK(dist(chain_apply_site(BlockOperator::identity(dims), 1, one).amplitudes,
               one.amplitudes) == 0.0);

    ChainState two = ChainState::zeros(dims, 2);
    two.amplitudes = test::random_matrix(rng, 8, 1);
    const ChainState seq = chain_apply_site(l2, 2, chain_apply_site(l1, 1, two));
    const ComplexMatrix dense = embed(l2, 2, 2) * embed(l1, 1, 2);
    CHECK(dist(seq.amplitudes, dense * two.amplitudes) < 1e-13);
}

TEST_CASE("chain_apply_site: norm preservation and commutation") {
    std::mt19937_64 rng(3);
    const SpaceDims dims(3, 2);
    const BlockOperator l = random_unitary_block(rng, dims);
    ChainState x = ChainState::zeros(dims, 3);
    x.amplitudes = test::random_matrix(rng, x.amplitudes.size(), 1);
    x.amplitudes.normalize();

    CHECK(std::abs(chain_apply_site(l, 2, x).amplitudes.norm() - 1.0) < 1e-12);

    // Site operators that act only on the environment commute across sites.
    BlockOperator env_only(dims);
    const ComplexMatrix small = test::random_matrix(rng, 3, 3);
    for (Eigen::Index j = 0; j < 3; ++j)
        for (Eigen::Index i = 0; i < 3; ++i)
            env_only.block(j, i) = small(j, i) * ComplexMatrix::Identity(3, 3);
    const ChainState a = chain_apply_site(env_only, 3, chain_apply_site(env_only, 1, x));
    const ChainState b = chain_apply_site(env_only, 1, chain_apply_site(env_only, 3, x));
    CHECK(dist(a.amplitudes, b.amplitudes) < 1e-12);

    CHECK_THROWS_AS(chain_apply_site(l, 4, x), Error);
    CHECK_THROWS_AS(chain_apply_site(BlockOperator::identity(SpaceDims(2, 2)), 1, x), Error);
}

TEST_CASE("product vectors and inner products") {
    const SpaceDims dims(2, 2);
    std::mt19937_64 rng(4);
    const ComplexVector sys = test::random_matrix(rng, 2, 1);

    const ChainState vac = chain_product_vector(dims, 3, sys, {ComplexVector::Zero(2),
                                                                ComplexVector::Zero(2),
                                                                ComplexVector::Zero(2)});
    ComplexVector expected = ComplexVector::Zero(vac.amplitudes.size());
    expected.head(2) = sys;
    CHECK(vac.amplitudes == expected);

    ComplexVector c(2);
    c << cplx{0.3, -0.1}, cplx{0.0, 0.7};
    const ChainState single = chain_product_vector(dims, 1, sys, {c});
    for (Eigen::Index s = 0; s < 2; ++s) {
        CHECK(single.amplitudes(s + 2 * 1) == sys(s) * c(0));
        CHECK(single.amplitudes(s + 2 * 2) == sys(s) * c(1));
    }

    std::vector<ComplexVector> v1, v2;
    for (int k = 0; k < 3; ++k) {
        v1.push_back(test::random_matrix(rng, 2, 1));
        v2.push_back(test::random_matrix(rng, 2, 1));
    }
    const ComplexVector sys2 = test::random_matrix(rng, 2, 1);
    cplx product = sys.dot(sys2);
    for (int k = 0; k < 3; ++k) product *= 1.0 + v1[k].dot(v2[k]);
    const cplx inner =
        chain_inner(chain_product_vector(dims, 3, sys, v1), chain_product_vector(dims, 3, sys2, v2));
    CHECK(std::abs(inner - product) < 1e-12 * std::abs(product));

    const ChainState x = chain_product_vector(dims, 3, sys, v1);
    const cplx xx = chain_inner(x, x);
    CHECK(xx.real() >= 0.0);
    CHECK(std::abs(xx.imag()) < 1e-12);

    const ChainState b1 = ChainState::basis(dims, 0, {1, 0});
    const ChainState b2 = ChainState::basis(dims, 0, {0, 1});
    CHECK(chain_inner(b1, b2) == cplx{0.0, 0.0});
    CHECK(chain_inner(b1, b1) == cplx{1.0, 0.0});

    CHECK_THROWS_AS(chain_product_vector(dims, 1, sys, {ComplexVector::Zero(3)}), Error);
    CHECK_THROWS_AS(chain_inner(b1, vac), Error);
}

TEST_CASE("chain size cap") {
    CHECK(chain_size(SpaceDims(2, 1), 3) == 16);
    CHECK_THROWS_AS(ChainState::zeros(SpaceDims(2, 3), 20), Error);
    try {
        ChainState::zeros(SpaceDims(2, 1), 10, 1000);
        FAIL("expected StateTooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::StateTooLarge);
    }
}

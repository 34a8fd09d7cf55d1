// model.hpp — state spaces, block operators on H0 ⊗ H, and the dense atom chain
//
// Environment basis: index 0 is the vacuum Ω, indices 1..N the excited levels.
// A flat operator on H0 ⊗ H uses index s + n0·e (system fastest).
// Chain amplitudes use idx = s + n0·(e1 + (N+1)·e2 + (N+1)²·e3 + ...),
// so site 1 varies fastest after the system index.

#pragma once

#include <cstddef>
#include <vector>

#include "rqi/numerics.hpp"

namespace rqi {

struct SpaceDims {
    Eigen::Index n0 = 1;    // dimension of the small system
    Eigen::Index n_env = 1; // excited levels N; environment dimension is N + 1

    SpaceDims() = default;
    SpaceDims(Eigen::Index n0_, Eigen::Index n_env_);

    Eigen::Index env_dim() const noexcept { return n_env + 1; }
    Eigen::Index flat_dim() const noexcept { return n0 * env_dim(); }

    friend bool operator==(const SpaceDims&, const SpaceDims&) = default;
};

// block(j, i) maps the X^i environment sector into the X^j sector.
class BlockOperator {
public:
    BlockOperator() = default;
    explicit BlockOperator(SpaceDims dims); // all blocks zero

    static BlockOperator identity(SpaceDims dims);

    const SpaceDims& dims() const noexcept { return dims_; }

    ComplexMatrix& block(Eigen::Index j, Eigen::Index i);
    const ComplexMatrix& block(Eigen::Index j, Eigen::Index i) const;

private:
    SpaceDims dims_;
    std::vector<ComplexMatrix> blocks_; // row-major over (j, i)
};

ComplexMatrix block_to_flat(const BlockOperator& b);
BlockOperator flat_to_block(const ComplexMatrix& m, SpaceDims dims);

inline constexpr std::size_t kDefaultChainCap = std::size_t{1} << 24;

struct ChainState {
    SpaceDims dims;
    std::size_t n_sites = 0;
    ComplexVector amplitudes;

    // Throws StateTooLarge above `cap` amplitudes.
    static ChainState zeros(SpaceDims dims, std::size_t n_sites,
                            std::size_t cap = kDefaultChainCap);
    // System basis vector s, chain excitations given per site (0 = Ω).
    static ChainState basis(SpaceDims dims, Eigen::Index s, const std::vector<Eigen::Index>& levels,
                            std::size_t cap = kDefaultChainCap);
};

std::size_t chain_size(SpaceDims dims, std::size_t n_sites, std::size_t cap = kDefaultChainCap);

// Rank-one site operator a_j^i: X^k ↦ δ_{ik} X^j at `site` (1-based).
ChainState toy_op_apply(Eigen::Index i, Eigen::Index j, std::size_t site, const ChainState& state);

// Applies l to (system, site), identity on the other sites.
ChainState chain_apply_site(const BlockOperator& l, std::size_t site, const ChainState& state);

// sys ⊗ ⊗_n (Ω + Σ_i v_n[i] X^i); site vectors hold only the excited components.
ChainState chain_product_vector(SpaceDims dims, std::size_t n_sites, const ComplexVector& sys,
                                const std::vector<ComplexVector>& site_vectors,
                                std::size_t cap = kDefaultChainCap);

cplx chain_inner(const ChainState& x, const ChainState& y);

} // namespace rqi

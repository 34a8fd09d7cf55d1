#include "rqi/model.hpp"

#include <string>

namespace rqi {

SpaceDims::SpaceDims(Eigen::Index n0_, Eigen::Index n_env_) : n0(n0_), n_env(n_env_) {
    if (n0 < 1 || n_env < 1) {
        throw Error(ErrorKind::DimensionMismatch, "SpaceDims requires n0 >= 1 and N >= 1");
    }
}

BlockOperator::BlockOperator(SpaceDims dims)
    : dims_(dims),
      blocks_(static_cast<std::size_t>(dims.env_dim() * dims.env_dim()),
              ComplexMatrix::Zero(dims.n0, dims.n0)) {}

BlockOperator BlockOperator::identity(SpaceDims dims) {
    BlockOperator b(dims);
    for (Eigen::Index e = 0; e < dims.env_dim(); ++e) {
        b.block(e, e) = ComplexMatrix::Identity(dims.n0, dims.n0);
    }
    return b;
}

ComplexMatrix& BlockOperator::block(Eigen::Index j, Eigen::Index i) {
    return blocks_.at(static_cast<std::size_t>(j * dims_.env_dim() + i));
}

const ComplexMatrix& BlockOperator::block(Eigen::Index j, Eigen::Index i) const {
    return blocks_.at(static_cast<std::size_t>(j * dims_.env_dim() + i));
}

ComplexMatrix block_to_flat(const BlockOperator& b) {
    const auto& d = b.dims();
    ComplexMatrix m(d.flat_dim(), d.flat_dim());
    for (Eigen::Index j = 0; j < d.env_dim(); ++j) {
        for (Eigen::Index i = 0; i < d.env_dim(); ++i) {
            m.block(j * d.n0, i * d.n0, d.n0, d.n0) = b.block(j, i);
        }
    }
    return m;
}

BlockOperator flat_to_block(const ComplexMatrix& m, SpaceDims dims) {
    if (m.rows() != dims.flat_dim() || m.cols() != dims.flat_dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "flat operator must be " + std::to_string(dims.flat_dim()) + " square");
    }
    BlockOperator b(dims);
    for (Eigen::Index j = 0; j < dims.env_dim(); ++j) {
        for (Eigen::Index i = 0; i < dims.env_dim(); ++i) {
            b.block(j, i) = m.block(j * dims.n0, i * dims.n0, dims.n0, dims.n0);
        }
    }
    return b;
}

std::size_t chain_size(SpaceDims dims, std::size_t n_sites, std::size_t cap) {
    auto size = static_cast<std::size_t>(dims.n0);
    const auto env = static_cast<std::size_t>(dims.env_dim());
    for (std::size_t k = 0; k < n_sites; ++k) {
        if (size > cap / env) {
            throw Error(ErrorKind::StateTooLarge,
                        "chain of " + std::to_string(n_sites) + " sites exceeds the cap of " +
                            std::to_string(cap) + " amplitudes");
        }
        size *= env;
    }
    if (size > cap) {
        throw Error(ErrorKind::StateTooLarge, "chain state exceeds the amplitude cap");
    }
    return size;
}

ChainState ChainState::zeros(SpaceDims dims, std::size_t n_sites, std::size_t cap) {
    const std::size_t size = chain_size(dims, n_sites, cap);
    return {dims, n_sites, ComplexVector::Zero(static_cast<Eigen::Index>(size))};
}

ChainState ChainState::basis(SpaceDims dims, Eigen::Index s,
                             const std::vector<Eigen::Index>& levels, std::size_t cap) {
    ChainState state = zeros(dims, levels.size(), cap);
    Eigen::Index idx = 0;
    Eigen::Index stride = dims.n0;
    for (const Eigen::Index e : levels) {
        if (e < 0 || e > dims.n_env) {
            throw Error(ErrorKind::DimensionMismatch, "environment level out of range");
        }
        idx += stride * e;
        stride *= dims.env_dim();
    }
    if (s < 0 || s >= dims.n0) {
        throw Error(ErrorKind::DimensionMismatch, "system index out of range");
    }
    state.amplitudes(idx + s) = 1.0;
    return state;
}

namespace {

struct SiteLayout {
    Eigen::Index inner; // (N+1)^(site-1)
    Eigen::Index outer; // (N+1)^(n_sites-site)
};

SiteLayout site_layout(const ChainState& state, std::size_t site) {
    if (site < 1 || site > state.n_sites) {
        throw Error(ErrorKind::SiteOutOfRange,
                    "site " + std::to_string(site) + " not in 1.." + std::to_string(state.n_sites));
    }
    const Eigen::Index env = state.dims.env_dim();
    SiteLayout layout{1, 1};
    for (std::size_t k = 1; k < site; ++k) {
        layout.inner *= env;
    }
    for (std::size_t k = site; k < state.n_sites; ++k) {
        layout.outer *= env;
    }
    return layout;
}

} // namespace

ChainState toy_op_apply(Eigen::Index i, Eigen::Index j, std::size_t site, const ChainState& state) {
    const auto& d = state.dims;
    if (i < 0 || i > d.n_env || j < 0 || j > d.n_env) {
        throw Error(ErrorKind::DimensionMismatch, "level index out of range");
    }
    const SiteLayout layout = site_layout(state, site);
    const Eigen::Index env = d.env_dim();
    ChainState out{d, state.n_sites, ComplexVector::Zero(state.amplitudes.size())};
    for (Eigen::Index hi = 0; hi < layout.outer; ++hi) {
        for (Eigen::Index lo = 0; lo < layout.inner; ++lo) {
            const Eigen::Index from = d.n0 * (lo + layout.inner * (i + env * hi));
            const Eigen::Index to = d.n0 * (lo + layout.inner * (j + env * hi));
            out.amplitudes.segment(to, d.n0) += state.amplitudes.segment(from, d.n0);
        }
    }
    return out;
}

ChainState chain_apply_site(const BlockOperator& l, std::size_t site, const ChainState& state) {
    const auto& d = state.dims;
    if (!(l.dims() == d)) {
        throw Error(ErrorKind::DimensionMismatch, "operator and chain dimensions differ");
    }
    const SiteLayout layout = site_layout(state, site);
    const Eigen::Index env = d.env_dim();
    const ComplexMatrix flat = block_to_flat(l);
    ChainState out{d, state.n_sites, ComplexVector(state.amplitudes.size())};
    ComplexVector local(d.flat_dim());
    for (Eigen::Index hi = 0; hi < layout.outer; ++hi) {
        for (Eigen::Index lo = 0; lo < layout.inner; ++lo) {
            for (Eigen::Index e = 0; e < env; ++e) {
                local.segment(e * d.n0, d.n0) =
                    state.amplitudes.segment(d.n0 * (lo + layout.inner * (e + env * hi)), d.n0);
            }
            const ComplexVector mapped = flat * local;
            for (Eigen::Index e = 0; e < env; ++e) {
                out.amplitudes.segment(d.n0 * (lo + layout.inner * (e + env * hi)), d.n0) =
                    mapped.segment(e * d.n0, d.n0);
            }
        }
    }
    return out;
}

ChainState chain_product_vector(SpaceDims dims, std::size_t n_sites, const ComplexVector& sys,
                                const std::vector<ComplexVector>& site_vectors, std::size_t cap) {
    if (sys.size() != dims.n0) {
        throw Error(ErrorKind::DimensionMismatch, "system vector length must equal n0");
    }
    if (site_vectors.size() < n_sites) {
        throw Error(ErrorKind::DimensionMismatch, "fewer site vectors than chain sites");
    }
    const std::size_t total = chain_size(dims, n_sites, cap);
    const Eigen::Index env = dims.env_dim();
    ComplexVector amps(static_cast<Eigen::Index>(total));
    amps.head(dims.n0) = sys;
    Eigen::Index filled = dims.n0;
    for (std::size_t n = 0; n < n_sites; ++n) {
        const ComplexVector& v = site_vectors[n];
        if (v.size() != dims.n_env) {
            throw Error(ErrorKind::DimensionMismatch, "site vector length must equal N");
        }
        // Higher levels first so the Ω copy (in place) is overwritten last.
        for (Eigen::Index e = env - 1; e >= 1; --e) {
            amps.segment(e * filled, filled) = v(e - 1) * amps.head(filled);
        }
        filled *= env;
    }
    return {dims, n_sites, std::move(amps)};
}

cplx chain_inner(const ChainState& x, const ChainState& y) {
    if (!(x.dims == y.dims) || x.n_sites != y.n_sites ||
        x.amplitudes.size() != y.amplitudes.size()) {
        throw Error(ErrorKind::DimensionMismatch, "chain states differ in shape");
    }
    return x.amplitudes.dot(y.amplitudes);
}

} // namespace rqi

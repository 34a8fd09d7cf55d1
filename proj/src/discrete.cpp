#include "rqi/discrete.hpp"

#include <algorithm>
#include <cmath>

namespace rqi {

CoherentFunction::CoherentFunction(Eigen::Index n_levels, std::vector<double> breakpoints,
                                   std::vector<ComplexVector> values)
    : n_levels_(n_levels), breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (n_levels_ < 1) {
        throw Error(ErrorKind::DimensionMismatch, "coherent function needs N >= 1 levels");
    }
    if (breakpoints_.empty() || breakpoints_.front() != 0.0) {
        throw Error(ErrorKind::ValidationError, "breakpoints must start at 0");
    }
    for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
        if (!(breakpoints_[k] > breakpoints_[k - 1]) || !std::isfinite(breakpoints_[k])) {
            throw Error(ErrorKind::ValidationError, "breakpoints must be strictly increasing");
        }
    }
    if (values_.size() + 1 != breakpoints_.size()) {
        throw Error(ErrorKind::ValidationError, "need one value per breakpoint interval");
    }
    for (const auto& v : values_) {
        if (v.size() != n_levels_) {
            throw Error(ErrorKind::DimensionMismatch, "coherent value length must equal N");
        }
        if (!v.allFinite()) {
            throw Error(ErrorKind::ValidationError, "coherent values must be finite");
        }
    }
}

CoherentFunction CoherentFunction::zero(Eigen::Index n_levels) {
    return {n_levels, {0.0}, {}};
}

CoherentFunction CoherentFunction::constant(const ComplexVector& value, double t_end) {
    return {value.size(), {0.0, t_end}, {value}};
}

ComplexVector CoherentFunction::value_at(double t) const {
    if (t < 0.0 || t >= support_end()) {
        return ComplexVector::Zero(n_levels_);
    }
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin() - 1)];
}

ComplexVector CoherentFunction::integral(double a, double b) const {
    ComplexVector acc = ComplexVector::Zero(n_levels_);
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const double lo = std::max(a, breakpoints_[k]);
        const double hi = std::min(b, breakpoints_[k + 1]);
        if (hi > lo) {
            acc += (hi - lo) * values_[k];
        }
    }
    return acc;
}

double CoherentFunction::sup_norm() const {
    double s = 0.0;
    for (const auto& v : values_) {
        s = std::max(s, v.norm());
    }
    return s;
}

cplx coherent_inner(const CoherentFunction& phi, const CoherentFunction& psi, double a) {
    if (phi.n_levels() != psi.n_levels()) {
        throw Error(ErrorKind::DimensionMismatch, "coherent functions differ in N");
    }
    std::vector<double> cuts = phi.breakpoints();
    cuts.insert(cuts.end(), psi.breakpoints().begin(), psi.breakpoints().end());
    cuts.push_back(a);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = cuts[k], hi = cuts[k + 1];
        if (lo < a) {
            continue;
        }
        const double mid = 0.5 * (lo + hi);
        acc += (hi - lo) * phi.value_at(mid).dot(psi.value_at(mid));
    }
    return acc;
}

ComplexVector DiscreteCoherent::site(std::size_t k, Eigen::Index n_levels) const {
    if (k >= 1 && k <= sites.size()) {
        return sites[k - 1];
    }
    return ComplexVector::Zero(n_levels);
}

std::size_t steps_for(double t, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(ErrorKind::InvalidTimestep, "timestep h must be positive");
    }
    if (!(t >= 0.0)) {
        throw Error(ErrorKind::ValidationError, "time must be nonnegative");
    }
    return static_cast<std::size_t>(std::floor(t / h + 1e-9));
}

std::size_t sites_covering(const CoherentFunction& f, double h) {
    if (!(h > 0.0)) {
        throw Error(ErrorKind::InvalidTimestep, "timestep h must be positive");
    }
    return static_cast<std::size_t>(std::ceil(f.support_end() / h - 1e-9));
}

DiscreteCoherent discretize_coherent(const CoherentFunction& f, double h, std::size_t n_sites) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(ErrorKind::InvalidTimestep, "timestep h must be positive");
    }
    DiscreteCoherent out{h, {}};
    out.sites.reserve(n_sites);
    const double scale = 1.0 / std::sqrt(h);
    for (std::size_t n = 1; n <= n_sites; ++n) {
        const double lo = h * static_cast<double>(n - 1);
        const double hi = h * static_cast<double>(n);
        out.sites.push_back(scale * f.integral(lo, hi));
    }
    return out;
}

namespace {

void require_same_step(const DiscreteCoherent& phi, const DiscreteCoherent& psi) {
    if (std::abs(phi.h - psi.h) > 1e-12 * std::max(phi.h, psi.h)) {
        throw Error(ErrorKind::MismatchedTimestep, "phi and psi were discretized at different h");
    }
}

Eigen::Index levels_of(const BlockOperator& l) { return l.dims().n_env; }

} // namespace

DiscreteBracket discrete_matrix_element(const BlockOperator& l, const DiscreteCoherent& phi,
                                        const DiscreteCoherent& psi, std::size_t n) {
    require_same_step(phi, psi);
    const auto& dims = l.dims();
    const Eigen::Index nl = levels_of(l);
    const Eigen::Index env = dims.env_dim();

    ComplexMatrix m = ComplexMatrix::Identity(dims.n0, dims.n0);
    ComplexVector fphi(env), fpsi(env);
    for (std::size_t k = 1; k <= n; ++k) {
        fphi(0) = 1.0;
        fpsi(0) = 1.0;
        fphi.tail(nl) = phi.site(k, nl);
        fpsi.tail(nl) = psi.site(k, nl);
        ComplexMatrix ck = ComplexMatrix::Zero(dims.n0, dims.n0);
        for (Eigen::Index j = 0; j < env; ++j) {
            for (Eigen::Index i = 0; i < env; ++i) {
                const cplx w = std::conj(fphi(j)) * fpsi(i);
                if (w != cplx{0.0, 0.0}) {
                    ck += w * l.block(j, i);
                }
            }
        }
        m = ck * m;
    }
    cplx tail{1.0, 0.0};
    const std::size_t last = std::max(phi.sites.size(), psi.sites.size());
    for (std::size_t k = n + 1; k <= last; ++k) {
        tail *= 1.0 + phi.site(k, nl).dot(psi.site(k, nl));
    }
    return {m, tail, tail * m};
}

Superoperator reduced_cp_map(const BlockOperator& l) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(static_cast<std::size_t>(l.dims().env_dim()));
    for (Eigen::Index i = 0; i < l.dims().env_dim(); ++i) {
        kraus.push_back(l.block(i, 0));
    }
    return kraus_superoperator(kraus);
}

Superoperator iterate_cp(const Superoperator& s, std::size_t n) {
    Superoperator result = Superoperator::identity(s.n0);
    ComplexMatrix base = s.matrix;
    while (n > 0) {
        if (n & 1U) {
            result.matrix = base * result.matrix;
        }
        n >>= 1U;
        if (n > 0) {
            base = base * base;
        }
    }
    return result;
}

cplx chain_simulate_bracket(const BlockOperator& l, std::size_t n, const ComplexVector& a,
                            const DiscreteCoherent& phi, const ComplexVector& b,
                            const DiscreteCoherent& psi, std::size_t cap) {
    require_same_step(phi, psi);
    const auto& dims = l.dims();
    const Eigen::Index nl = levels_of(l);
    std::vector<ComplexVector> phi_sites, psi_sites;
    for (std::size_t k = 1; k <= n; ++k) {
        phi_sites.push_back(phi.site(k, nl));
        psi_sites.push_back(psi.site(k, nl));
    }
    ChainState state = chain_product_vector(dims, n, b, psi_sites, cap);
    for (std::size_t site = 1; site <= n; ++site) {
        state = chain_apply_site(l, site, state);
    }
    const ChainState bra = chain_product_vector(dims, n, a, phi_sites, cap);
    cplx tail{1.0, 0.0};
    const std::size_t last = std::max(phi.sites.size(), psi.sites.size());
    for (std::size_t k = n + 1; k <= last; ++k) {
        tail *= 1.0 + phi.site(k, nl).dot(psi.site(k, nl));
    }
    return chain_inner(bra, state) * tail;
}

} // namespace rqi

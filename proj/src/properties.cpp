#include "chainweight/properties.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "chainweight/errors.hpp"

namespace chainweight {

namespace {

constexpr double kDegreeOneEps = 1e-12;
// Structural non-homogeneity verdicts are only issued when the degree is far
// enough from 1 that the canonical witness clears the sampling tolerance;
// in the narrow band between, the sampled verdict decides.
constexpr double kDegreeFailMargin = 1e-8;

constexpr std::array<double, 4> kAlphaGrid{2.0, 0.5, 4.0, 0.25};
constexpr std::array<double, 3> kAlphaGridSpace{2.0, 4.0, 8.0};

ResourcePoint all_ones(const Dims& d) {
    return {std::vector<double>(d.space, 1.0), std::vector<double>(d.vdf, 1.0),
            std::vector<double>(d.work, 1.0)};
}

ResourcePoint scale_timed(const ResourcePoint& p, double alpha) {
    ResourcePoint q = p;
    for (double& x : q.vdf) x *= alpha;
    for (double& x : q.work) x *= alpha;
    return q;
}

ResourcePoint scale_space(const ResourcePoint& p, double alpha) {
    ResourcePoint q = p;
    for (double& x : q.space) x *= alpha;
    return q;
}

/// beta = Gamma(s, a*v, a*w) - a*Gamma(s, v, w); violation when |beta|
/// exceeds the relative tolerance.
bool homogeneity_violation(const WeightExpr& expr, const ResourcePoint& p,
                           double alpha, double tol, double& beta) {
    const double base = expr.eval(p);
    const double scaled = expr.eval(scale_timed(p, alpha));
    beta = scaled - alpha * base;
    return std::abs(beta) > tol * alpha * base;
}

}  // namespace

const char* to_string(PropertyKind kind) {
    switch (kind) {
        case PropertyKind::monotone: return "monotone";
        case PropertyKind::homogeneous_timed: return "homogeneous_timed";
        case PropertyKind::subhomogeneous_space: return "subhomogeneous_space";
    }
    return "?";
}

PropertyReport check_monotone(const WeightExpr& expr, const SamplerConfig& cfg) {
    PropertyReport rep;
    rep.property = PropertyKind::monotone;
    if (!expr.has_opaque_node()) {
        // Every node kind of the algebra composes monotonically, so the whole
        // tree is monotone by construction.
        rep.holds = true;
        rep.symbolic = true;
        return rep;
    }
    const Dims d = expr.required_dims();
    detail::Rng rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const ResourcePoint a = rng.next_point(d, cfg.coord_lo, cfg.coord_hi);
        const ResourcePoint b = rng.next_point(d, cfg.coord_lo, cfg.coord_hi);
        ResourcePoint lo = a, hi = b;
        for (std::size_t k = 0; k < d.space; ++k) {
            lo.space[k] = std::min(a.space[k], b.space[k]);
            hi.space[k] = std::max(a.space[k], b.space[k]);
        }
        for (std::size_t k = 0; k < d.vdf; ++k) {
            lo.vdf[k] = std::min(a.vdf[k], b.vdf[k]);
            hi.vdf[k] = std::max(a.vdf[k], b.vdf[k]);
        }
        for (std::size_t k = 0; k < d.work; ++k) {
            lo.work[k] = std::min(a.work[k], b.work[k]);
            hi.work[k] = std::max(a.work[k], b.work[k]);
        }
        ++rep.samples_checked;
        const double glo = expr.eval(lo);
        const double ghi = expr.eval(hi);
        if (glo > ghi + cfg.tolerance) {
            rep.holds = false;
            rep.witness = PropertyWitness{lo, hi, 1.0, glo - ghi};
            return rep;
        }
    }
    rep.holds = true;
    return rep;
}

PropertyReport check_homogeneous_timed(const WeightExpr& expr, const SamplerConfig& cfg) {
    PropertyReport rep;
    rep.property = PropertyKind::homogeneous_timed;
    const Dims d = expr.required_dims();

    if (const auto deg = expr.timed_scaling_degree()) {
        if (std::abs(*deg - 1.0) <= kDegreeOneEps) {
            rep.holds = true;
            rep.symbolic = true;
            return rep;
        }
        if (std::abs(*deg - 1.0) > kDegreeFailMargin) {
            // Exact scaling law with degree != 1: any alpha != 1 witnesses.
            rep.holds = false;
            rep.symbolic = true;
            double beta = 0;
            const ResourcePoint p = all_ones(d);
            homogeneity_violation(expr, p, 2.0, cfg.tolerance, beta);
            rep.witness = PropertyWitness{p, std::nullopt, 2.0, beta};
            rep.samples_checked = 1;
            return rep;
        }
    }

    // Sampled check: deterministic grid probes first, then random draws.
    detail::Rng rng(cfg.seed);
    const ResourcePoint ones = all_ones(d);
    for (double alpha : kAlphaGrid) {
        ++rep.samples_checked;
        double beta = 0;
        if (homogeneity_violation(expr, ones, alpha, cfg.tolerance, beta)) {
            rep.holds = false;
            rep.witness = PropertyWitness{ones, std::nullopt, alpha, beta};
            return rep;
        }
    }
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const ResourcePoint p = rng.next_point(d, cfg.coord_lo, cfg.coord_hi);
        const double drawn = rng.next_log_uniform(1.0 / 8.0, 8.0);
        for (double alpha : {drawn, kAlphaGrid[0], kAlphaGrid[1], kAlphaGrid[2], kAlphaGrid[3]}) {
            ++rep.samples_checked;
            double beta = 0;
            if (homogeneity_violation(expr, p, alpha, cfg.tolerance, beta)) {
                rep.holds = false;
                rep.witness = PropertyWitness{p, std::nullopt, alpha, beta};
                return rep;
            }
        }
    }
    rep.holds = true;
    return rep;
}

PropertyReport check_subhomogeneous_space(const WeightExpr& expr, const SamplerConfig& cfg) {
    PropertyReport rep;
    rep.property = PropertyKind::subhomogeneous_space;
    const Dims d = expr.required_dims();

    if (const auto bound = expr.space_scaling_bound()) {
        if (*bound <= 1.0 + kDegreeOneEps) {
            rep.holds = true;
            rep.symbolic = true;
            return rep;
        }
    }

    detail::Rng rng(cfg.seed);
    const ResourcePoint ones = all_ones(d);
    auto violation = [&](const ResourcePoint& p, double alpha, double& excess) {
        const double base = expr.eval(p);
        const double scaled = expr.eval(scale_space(p, alpha));
        excess = scaled - alpha * base;
        return scaled > alpha * base + cfg.tolerance;
    };
    for (double alpha : kAlphaGridSpace) {
        ++rep.samples_checked;
        double excess = 0;
        if (violation(ones, alpha, excess)) {
            rep.holds = false;
            rep.witness = PropertyWitness{ones, std::nullopt, alpha, excess};
            return rep;
        }
    }
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const ResourcePoint p = rng.next_point(d, cfg.coord_lo, cfg.coord_hi);
        const double alpha = rng.next_log_uniform(1.0, 8.0);
        ++rep.samples_checked;
        double excess = 0;
        if (violation(p, alpha, excess)) {
            rep.holds = false;
            rep.witness = PropertyWitness{p, std::nullopt, alpha, excess};
            return rep;
        }
    }
    rep.holds = true;
    return rep;
}

Classification classify(const WeightExpr& expr, const SamplerConfig& cfg) {
    if (!expr.references_variable())
        throw VacuousWeightError(
            "constant weight functions are vacuous: no adversary with a weight "
            "disadvantage exists, so no security verdict applies");
    Classification c;
    c.monotone = check_monotone(expr, cfg);
    c.homogeneous = check_homogeneous_timed(expr, cfg);
    c.subhomogeneous = check_subhomogeneous_space(expr, cfg);
    c.continuous_secure = c.monotone.holds && c.homogeneous.holds;
    c.discrete_sufficient = c.continuous_secure && c.subhomogeneous.holds;
    return c;
}

}  // namespace chainweight

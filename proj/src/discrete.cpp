#include "chainweight/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chainweight/continuous.hpp"

namespace chainweight {

namespace {

constexpr double kIntegerEps = 1e-9;
constexpr double kRelTol = 1e-9;

/// Extrema of the V or W rates over the open span (same segment logic as
/// space extrema).
SpaceExtrema rate_extrema(const ResourceProfile& p, double a, double b, bool vdf) {
    const std::size_t n = vdf ? p.dims().vdf : p.dims().work;
    SpaceExtrema ex{std::vector<double>(n), std::vector<double>(n)};
    bool first = true;
    for (std::size_t i = 0; i < p.segments().size(); ++i) {
        if (!(std::max(p.segments()[i].t, a) < std::min(p.segment_end(i), b))) continue;
        const auto& v = vdf ? p.segments()[i].value.vdf : p.segments()[i].value.work;
        for (std::size_t k = 0; k < n; ++k) {
            if (first) {
                ex.lo[k] = ex.hi[k] = v[k];
            } else {
                ex.lo[k] = std::min(ex.lo[k], v[k]);
                ex.hi[k] = std::max(ex.hi[k], v[k]);
            }
        }
        first = false;
    }
    return ex;
}

double max_ratio(const SpaceExtrema& ex) {
    double r = 1.0;
    for (std::size_t k = 0; k < ex.lo.size(); ++k) r = std::max(r, ex.hi[k] / ex.lo[k]);
    return r;
}

bool ge_with_tol(double a, double b) {
    return a >= b - kRelTol * std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace

Block make_block(const ResourceProfile& profile, double start, double end,
                 const SpacePolicy& policy) {
    if (!(start >= 0) || !(end <= profile.horizon()) || !(start < end))
        throw std::invalid_argument("block span must satisfy 0 <= start < end <= horizon");

    Block b;
    b.start = start;
    b.end = end;
    b.space_ex = profile.space_extrema(start, end);
    b.vdf_ex = rate_extrema(profile, start, end, true);
    b.work_ex = rate_extrema(profile, start, end, false);
    const TimedIntegral timed = profile.integrate_timed(start, end);
    b.vdf_recorded = timed.vdf;
    b.work_recorded = timed.work;

    switch (policy.kind) {
        case SpacePolicy::Kind::use_min:
            b.space_recorded = b.space_ex.lo;
            break;
        case SpacePolicy::Kind::use_max:
            b.space_recorded = b.space_ex.hi;
            break;
        case SpacePolicy::Kind::explicit_value: {
            if (policy.value.size() != b.space_ex.lo.size())
                throw std::invalid_argument("explicit space value has wrong dimension");
            for (std::size_t k = 0; k < policy.value.size(); ++k) {
                const double v = policy.value[k];
                const double lo = b.space_ex.lo[k], hi = b.space_ex.hi[k];
                // Attainable snapshot: within [inf, sup) when space varies on
                // the span, exactly the constant otherwise.
                const bool ok = lo == hi ? v == lo : (v >= lo && v < hi);
                if (!ok)
                    throw std::invalid_argument(
                        "explicit space value is not attainable within the block span");
            }
            b.space_recorded = policy.value;
            break;
        }
    }
    return b;
}

Blockchain honest_discretize(const ResourceProfile& profile) {
    const double t = profile.horizon();
    const double rounded = std::round(t);
    if (std::abs(t - rounded) > kIntegerEps || rounded < 1)
        throw std::invalid_argument("honest discretization needs a positive integer horizon");
    const std::size_t n = static_cast<std::size_t>(rounded);
    Blockchain chain{{}, ChainKind::honest};
    chain.blocks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double start = static_cast<double>(i);
        const double end = i + 1 == n ? t : static_cast<double>(i + 1);
        chain.blocks.push_back(make_block(profile, start, end, SpacePolicy::min()));
    }
    return chain;
}

Blockchain adversarial_discretize(const ResourceProfile& profile,
                                  const std::vector<std::pair<double, double>>& spans) {
    Blockchain chain{{}, ChainKind::adversarial};
    chain.blocks.reserve(spans.size());
    double prev_end = 0;
    for (const auto& [start, end] : spans) {
        if (start < prev_end)
            throw std::invalid_argument("adversarial block spans must be ordered and disjoint");
        chain.blocks.push_back(make_block(profile, start, end, SpacePolicy::max()));
        prev_end = end;
    }
    return chain;
}

double smoothness(const Blockchain& chain) {
    if (chain.blocks.empty())
        throw std::invalid_argument("smoothness of an empty chain is undefined");
    double xi = 1.0;
    for (const Block& b : chain.blocks) {
        xi = std::max(xi, max_ratio(b.space_ex));
        xi = std::max(xi, max_ratio(b.vdf_ex));
        xi = std::max(xi, max_ratio(b.work_ex));
    }
    return xi;
}

double blockchain_weight(const WeightExpr& expr, const Blockchain& chain) {
    double total = 0;
    for (const Block& b : chain.blocks) total += expr.eval(b.recorded_point());
    return total;
}

TheoremChainReport verify_theorem_chain(const WeightExpr& expr,
                                        const ResourceProfile& honest,
                                        const ResourceProfile& adversary,
                                        const Blockchain& honest_chain,
                                        const Blockchain& adversarial_chain,
                                        double delta,
                                        std::optional<double> xi) {
    if (!(delta >= 1)) throw std::invalid_argument("delta must be >= 1");

    TheoremChainReport rep;
    rep.delta = delta;
    rep.honest_smoothness = smoothness(honest_chain);
    rep.adversarial_smoothness =
        adversarial_chain.blocks.empty() ? 1.0 : smoothness(adversarial_chain);
    const double measured = std::max(rep.honest_smoothness, rep.adversarial_smoothness);
    rep.xi = xi.value_or(measured);
    rep.smoothness_ok = measured <= rep.xi * (1 + kRelTol) &&
                        std::pow(rep.xi, 4.0) <= delta * (1 + kRelTol);

    // Pointwise gap: delta * Gamma(adv(t)) < Gamma(honest(t)), exact per
    // segment since both sides are piecewise constant.
    rep.gap_ok = true;
    {
        std::vector<double> breaks;
        for (const auto& s : honest.segments()) breaks.push_back(s.t);
        for (const auto& s : adversary.segments()) breaks.push_back(s.t);
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
        for (double t : breaks) {
            if (!(delta * expr.eval(adversary.at(t)) < expr.eval(honest.at(t)))) {
                rep.gap_ok = false;
                break;
            }
        }
    }

    const double xi2 = rep.xi * rep.xi;
    rep.honest_block_weight = blockchain_weight(expr, honest_chain);
    rep.adv_block_weight = blockchain_weight(expr, adversarial_chain);
    rep.honest_scaled = profile_weight(expr, honest) / xi2;
    rep.adv_scaled = profile_weight(expr, adversary) * xi2;

    rep.ineq_honest = ge_with_tol(rep.honest_block_weight, rep.honest_scaled);
    rep.ineq_middle = rep.honest_scaled > rep.adv_scaled;
    rep.ineq_adv = ge_with_tol(rep.adv_scaled, rep.adv_block_weight);
    return rep;
}

}  // namespace chainweight

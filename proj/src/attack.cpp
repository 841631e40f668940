#include "chainweight/attack.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "chainweight/errors.hpp"

namespace chainweight {

namespace {

constexpr std::array<double, 6> kProbeAlphas{2.0, 0.5, 4.0, 0.25, 8.0, 0.125};
constexpr std::size_t kSecondPointAttempts = 1u << 14;
constexpr double kSecondPointLo = 1.0 / 64.0;
constexpr double kSecondPointHi = 64.0;

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

ResourcePoint scale_all(const ResourcePoint& p, double alpha) {
    ResourcePoint q = p;
    for (double& x : q.space) x *= alpha;
    for (double& x : q.vdf) x *= alpha;
    for (double& x : q.work) x *= alpha;
    return q;
}

/// Fills in the normalized witness for a confirmed violation at (p, alpha).
/// The stretch-side reduction keeps everything in the beta > 0 regime the
/// constructions expect.
HomogeneityWitness normalize(const WeightExpr& expr, ResourcePoint p, double alpha,
                             const SamplerConfig& cfg) {
    double beta = expr.eval(scale_timed(p, alpha)) - alpha * expr.eval(p);
    if (beta < 0) {
        p = scale_timed(p, alpha);
        alpha = 1.0 / alpha;
        beta = expr.eval(scale_timed(p, alpha)) - alpha * expr.eval(p);
    }

    HomogeneityWitness w;
    w.point = p;
    w.alpha = alpha;
    w.beta = beta;

    const double g_base = expr.eval(p);
    const double g_scaled = expr.eval(scale_timed(p, alpha));
    if (alpha > 1) {
        // alpha > 1 with g_scaled <= g_base would force beta <= (1-alpha)*g_base < 0,
        // contradicting beta > 0; so the squeeze case always applies here.
        w.case_tag = CaseTag::case_1b;
        return w;
    }
    if (g_scaled < g_base) {
        w.case_tag = CaseTag::case_1c;
        return w;
    }

    // Unchanged weight under timed scaling: need any second point whose
    // weight differs (one exists unless the function is constant over the
    // sampled region).
    detail::Rng rng(cfg.seed ^ 0x5ec011dull);
    const Dims d = expr.required_dims();
    auto consider = [&](const ResourcePoint& q) {
        const double g = expr.eval(q);
        if (std::abs(g - g_base) <= cfg.tolerance * std::max(g, g_base)) return false;
        w.second_point = q;
        w.delta = std::abs(g - g_base);
        w.case_tag = g > g_base ? CaseTag::case_1d_A : CaseTag::case_1d_B;
        return true;
    };
    for (double f : {2.0, 4.0, 8.0, 0.5, 0.25, 0.125})
        if (consider(scale_all(p, f))) return w;
    for (std::size_t i = 0; i < kSecondPointAttempts; ++i)
        if (consider(rng.next_point(d, kSecondPointLo, kSecondPointHi))) return w;
    throw AttackInconclusiveError(
        "homogeneity witness found, but no second point with differing weight in the "
        "sampled region; the function may be constant-like there");
}

}  // namespace

const char* to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::case_1b: return "1b";
        case CaseTag::case_1c: return "1c";
        case CaseTag::case_1d_A: return "1d-A";
        case CaseTag::case_1d_B: return "1d-B";
        case CaseTag::non_monotone: return "non-monotone";
    }
    return "?";
}

std::optional<HomogeneityWitness> find_homogeneity_witness(const WeightExpr& expr,
                                                           const SamplerConfig& cfg) {
    if (const auto deg = expr.timed_scaling_degree()) {
        if (std::abs(*deg - 1.0) <= 1e-12) return std::nullopt;  // homogeneous, no witness
    }
    auto violates = [&](const ResourcePoint& p, double alpha) {
        const double base = expr.eval(p);
        const double beta = expr.eval(scale_timed(p, alpha)) - alpha * base;
        return std::abs(beta) > cfg.tolerance * alpha * base;
    };
    const Dims d = expr.required_dims();
    const ResourcePoint ones = all_ones(d);
    for (double alpha : kProbeAlphas)
        if (violates(ones, alpha)) return normalize(expr, ones, alpha, cfg);
    detail::Rng rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const ResourcePoint p = rng.next_point(d, cfg.coord_lo, cfg.coord_hi);
        const double alpha = rng.next_log_uniform(1.0 / 8.0, 8.0);
        if (violates(p, alpha)) return normalize(expr, p, alpha, cfg);
        for (double a : kProbeAlphas)
            if (violates(p, a)) return normalize(expr, p, a, cfg);
    }
    return std::nullopt;
}

std::optional<std::pair<ResourcePoint, ResourcePoint>> find_nonmonotone_witness(
    const WeightExpr& expr, const SamplerConfig& cfg) {
    const PropertyReport rep = check_monotone(expr, cfg);
    if (rep.holds) return std::nullopt;
    return std::make_pair(rep.witness->point, *rep.witness->second_point);
}

AttackScenario synthesize_attack(const WeightExpr& expr, const HomogeneityWitness& w) {
    const ResourcePoint& p = w.point;
    const ResourcePoint scaled = scale_timed(p, w.alpha);
    const double g_base = expr.eval(p);
    const double g_scaled = expr.eval(scaled);
    const double t1 = 1.0;

    switch (w.case_tag) {
        case CaseTag::case_1b: {
            const double t0 = (w.alpha - 1.0) / w.beta * g_scaled;
            const double horizon = t0 + t1;
            return AttackScenario{
                ResourceProfile(horizon, {{0.0, p}, {t0, scaled}}),
                ResourceProfile::constant(horizon, p),
                TimeWarp::constant(horizon, w.alpha),
                RecordingPolicy::max_allowed(),
                t0, t1, w.case_tag};
        }
        case CaseTag::case_1c: {
            double t0 = w.alpha / w.beta * ((1.0 - w.alpha) * g_base - w.beta);
            if (!(t0 > 0)) t0 = 1.0;  // any positive value satisfies the bound
            const double horizon = t0 + t1;
            return AttackScenario{
                ResourceProfile::constant(horizon, p),
                ResourceProfile(horizon, {{0.0, p}, {t0, scaled}}),
                TimeWarp(horizon, {{0.0, w.alpha}, {t0, 1.0}}),
                RecordingPolicy::max_allowed(),
                t0, t1, w.case_tag};
        }
        case CaseTag::case_1d_A:
        case CaseTag::case_1d_B: {
            if (!w.second_point || !w.delta)
                throw AttackInconclusiveError(
                    "1d attack needs a second point with differing weight");
            const double t0 = *w.delta / (g_base * (1.0 / w.alpha - 1.0));
            const double horizon = t0 + t1;
            ResourceProfile two_phase(horizon, {{0.0, p}, {t0, *w.second_point}});
            ResourceProfile flat = ResourceProfile::constant(horizon, p);
            const bool second_on_honest = w.case_tag == CaseTag::case_1d_A;
            return AttackScenario{
                second_on_honest ? two_phase : flat,
                second_on_honest ? flat : two_phase,
                TimeWarp(horizon, {{0.0, w.alpha}, {t0, 1.0}}),
                RecordingPolicy::max_allowed(),
                t0, t1, w.case_tag};
        }
        case CaseTag::non_monotone:
            break;
    }
    throw std::invalid_argument("homogeneity witness carries a non-homogeneity case tag");
}

AttackScenario synthesize_attack(const WeightExpr& expr,
                                 const std::pair<ResourcePoint, ResourcePoint>& witness) {
    const auto& [small, big] = witness;
    if (!(expr.eval(small) > expr.eval(big)))
        throw std::invalid_argument("non-monotone witness must weigh more at the smaller point");
    const double t0 = 1.0, t1 = 1.0;
    const double horizon = t0 + t1;
    // No warp needed: honestly-timed under-recording to the smaller, heavier
    // point already ties the honest chain.
    return AttackScenario{
        ResourceProfile::constant(horizon, small),
        ResourceProfile::constant(horizon, big),
        TimeWarp::identity(horizon),
        RecordingPolicy::explicit_profile(ResourceProfile::constant(horizon, small)),
        t0, t1, CaseTag::non_monotone};
}

AttackOutcome run_attack(const WeightExpr& expr, const AttackScenario& scenario) {
    AttackOutcome out;
    out.preconditions = check_preconditions(expr, scenario.honest, scenario.adversary);
    out.preconditions_ok = out.preconditions.ok();
    out.honest_weight = profile_weight(expr, scenario.honest);
    const ChainProfile chain =
        adversarial_chain(scenario.adversary, scenario.warp, scenario.recording);
    out.adversarial_weight = chain_weight(expr, chain);
    out.success = out.adversarial_weight >= out.honest_weight - 1e-9;
    return out;
}

}  // namespace chainweight

#include "chainweight/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainweight {

namespace {

constexpr double kHorizonEps = 1e-9;

std::vector<double> merged_breakpoints(const std::vector<double>& a,
                                       const std::vector<double>& b) {
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> breakpoints_of(const ResourceProfile& p) {
    std::vector<double> out;
    out.reserve(p.segments().size());
    for (const auto& s : p.segments()) out.push_back(s.t);
    return out;
}

std::vector<double> breakpoints_of(const TimeWarp& w) {
    std::vector<double> out;
    out.reserve(w.segments().size());
    for (const auto& s : w.segments()) out.push_back(s.t);
    return out;
}

[[noreturn]] void recording_violation(const char* kind, std::size_t index, double tt,
                                      double recorded, double bound) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "recorded %s%zu = %.12g exceeds the allowed bound %.12g at altered time %.12g",
                  kind, index + 1, recorded, bound, tt);
    throw std::invalid_argument(buf);
}

void check_recorded_leq(const ResourcePoint& recorded, const ResourcePoint& bound,
                        double tt) {
    // Tiny relative slack so a recording constructed as exactly-the-bound
    // never trips over a rounding ulp.
    auto ok = [](double r, double b) { return r <= b * (1 + 1e-12); };
    for (std::size_t k = 0; k < recorded.space.size(); ++k)
        if (!ok(recorded.space[k], bound.space[k]))
            recording_violation("S", k, tt, recorded.space[k], bound.space[k]);
    for (std::size_t k = 0; k < recorded.vdf.size(); ++k)
        if (!ok(recorded.vdf[k], bound.vdf[k]))
            recording_violation("V", k, tt, recorded.vdf[k], bound.vdf[k]);
    for (std::size_t k = 0; k < recorded.work.size(); ++k)
        if (!ok(recorded.work[k], bound.work[k]))
            recording_violation("W", k, tt, recorded.work[k], bound.work[k]);
}

}  // namespace

ChainProfile adversarial_chain(const ResourceProfile& resources, const TimeWarp& warp,
                               const RecordingPolicy& recording) {
    if (std::abs(resources.horizon() - warp.horizon()) > kHorizonEps)
        throw std::invalid_argument("resource profile and warp must share the horizon");

    // Bound profile over altered time: psi-images of the union breakpoints.
    const std::vector<double> breaks =
        merged_breakpoints(breakpoints_of(resources), breakpoints_of(warp));
    std::vector<ProfileSegment> bound_segments;
    bound_segments.reserve(breaks.size());
    for (double t : breaks) {
        ResourcePoint rec = resources.at(t);
        const double phi = warp.phi_at(t);
        for (double& x : rec.vdf) x *= phi;
        for (double& x : rec.work) x *= phi;
        bound_segments.push_back({warp.altered_time(t), std::move(rec)});
    }
    ResourceProfile bound(warp.altered_horizon(), std::move(bound_segments));

    if (recording.is_max_allowed())
        return ChainProfile{std::move(bound), Provenance::adversarial};

    const ResourceProfile& rec = recording.recorded();
    if (std::abs(rec.horizon() - bound.horizon()) > kHorizonEps)
        throw std::invalid_argument("recorded profile must cover [0, altered horizon]");
    if (rec.dims() != bound.dims())
        throw std::invalid_argument("recorded profile dimensions must match the resources");
    const std::vector<double> check_pts =
        merged_breakpoints(breakpoints_of(rec), breakpoints_of(bound));
    for (double tt : check_pts)
        check_recorded_leq(rec.at(std::min(tt, rec.horizon())),
                           bound.at(std::min(tt, bound.horizon())), tt);
    return ChainProfile{rec, Provenance::adversarial};
}

double profile_weight(const WeightExpr& expr, const ResourceProfile& profile) {
    double total = 0;
    const auto& segs = profile.segments();
    for (std::size_t i = 0; i < segs.size(); ++i)
        total += expr.eval(segs[i].value) * (profile.segment_end(i) - segs[i].t);
    return total;
}

PreconditionReport check_preconditions(const WeightExpr& expr,
                                       const ResourceProfile& honest,
                                       const ResourceProfile& adversary) {
    if (std::abs(honest.horizon() - adversary.horizon()) > kHorizonEps)
        throw std::invalid_argument("profiles must share the horizon");

    PreconditionReport rep;
    rep.weak_ok = true;
    const double horizon = honest.horizon();
    const std::vector<double> breaks =
        merged_breakpoints(breakpoints_of(honest), breakpoints_of(adversary));

    double run_start = 0, run_len = 0;  // current strict-inequality run
    double best_start = 0, best_len = 0;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        const double seg_start = breaks[i];
        const double seg_end = i + 1 < breaks.size() ? breaks[i + 1] : horizon;
        const double gh = expr.eval(honest.at(seg_start));
        const double ga = expr.eval(adversary.at(seg_start));
        if (ga > gh && rep.weak_ok) {
            rep.weak_ok = false;
            rep.first_violation_time = seg_start;
        }
        if (ga < gh) {
            if (run_len == 0) run_start = seg_start;
            run_len += seg_end - seg_start;
            if (run_len > best_len) {
                best_len = run_len;
                best_start = run_start;
            }
        } else {
            run_len = 0;
        }
    }
    rep.strict_ok = best_len >= kMinStrictIntervalFraction * horizon;
    rep.strict_start = best_start;
    rep.strict_end = best_start + best_len;
    return rep;
}

}  // namespace chainweight

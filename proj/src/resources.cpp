#include "chainweight/resources.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chainweight {

namespace {

void check_components(const std::vector<double>& xs, const char* label) {
    for (double x : xs) {
        if (!(x >= kMinResource)) {
            throw std::invalid_argument(std::string(label) +
                                        " component must be >= 1e-12, got " +
                                        std::to_string(x));
        }
    }
}

}  // namespace

void validate_point(const ResourcePoint& p) {
    check_components(p.space, "space");
    check_components(p.vdf, "vdf");
    check_components(p.work, "work");
}

ResourceProfile::ResourceProfile(double horizon, std::vector<ProfileSegment> segments)
    : horizon_(horizon), segments_(std::move(segments)) {
    if (!(horizon_ > 0) || !std::isfinite(horizon_))
        throw std::invalid_argument("profile horizon must be positive and finite");
    if (segments_.empty())
        throw std::invalid_argument("profile needs at least one segment");
    if (segments_.front().t != 0)
        throw std::invalid_argument("first segment must start at t=0");
    const Dims d = segments_.front().value.dims();
    double prev = -1;
    for (const auto& seg : segments_) {
        if (!(seg.t > prev))
            throw std::invalid_argument("segment breakpoints must be strictly increasing");
        if (!(seg.t < horizon_))
            throw std::invalid_argument("segment breakpoints must lie below the horizon");
        if (seg.value.dims() != d)
            throw std::invalid_argument("all segments must agree on resource dimensions");
        validate_point(seg.value);
        prev = seg.t;
    }
}

ResourceProfile ResourceProfile::constant(double horizon, ResourcePoint value) {
    return ResourceProfile(horizon, {{0.0, std::move(value)}});
}

std::size_t ResourceProfile::segment_index(double t) const {
    // Last segment whose start is <= t.
    auto it = std::upper_bound(
        segments_.begin(), segments_.end(), t,
        [](double lhs, const ProfileSegment& seg) { return lhs < seg.t; });
    return static_cast<std::size_t>(it - segments_.begin()) - 1;
}

double ResourceProfile::segment_end(std::size_t i) const {
    return i + 1 < segments_.size() ? segments_[i + 1].t : horizon_;
}

const ResourcePoint& ResourceProfile::at(double t) const {
    if (!(t >= 0) || !(t <= horizon_))
        throw std::out_of_range("time outside [0, horizon]");
    return segments_[segment_index(t)].value;
}

TimedIntegral ResourceProfile::integrate_timed(double a, double b) const {
    if (!(a >= 0) || !(b <= horizon_) || !(a < b))
        throw std::invalid_argument("integration bounds must satisfy 0 <= a < b <= horizon");
    const Dims d = dims();
    TimedIntegral total{std::vector<double>(d.vdf, 0.0), std::vector<double>(d.work, 0.0)};
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const double lo = std::max(a, segments_[i].t);
        const double hi = std::min(b, segment_end(i));
        if (hi <= lo) continue;
        const double len = hi - lo;
        const ResourcePoint& v = segments_[i].value;
        for (std::size_t k = 0; k < d.vdf; ++k) total.vdf[k] += v.vdf[k] * len;
        for (std::size_t k = 0; k < d.work; ++k) total.work[k] += v.work[k] * len;
    }
    return total;
}

SpaceExtrema ResourceProfile::space_extrema(double a, double b) const {
    if (!(a >= 0) || !(b <= horizon_) || !(a < b))
        throw std::invalid_argument("extrema bounds must satisfy 0 <= a < b <= horizon");
    const std::size_t k1 = dims().space;
    SpaceExtrema ex{std::vector<double>(k1), std::vector<double>(k1)};
    bool first = true;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        // Segment [t_i, end_i) meets the open interval (a, b) in positive
        // measure iff max(t_i, a) < min(end_i, b).
        if (!(std::max(segments_[i].t, a) < std::min(segment_end(i), b))) continue;
        const auto& s = segments_[i].value.space;
        for (std::size_t k = 0; k < k1; ++k) {
            if (first) {
                ex.lo[k] = ex.hi[k] = s[k];
            } else {
                ex.lo[k] = std::min(ex.lo[k], s[k]);
                ex.hi[k] = std::max(ex.hi[k], s[k]);
            }
        }
        first = false;
    }
    return ex;
}

}  // namespace chainweight

#include "chainweight/time_warp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chainweight/resources.hpp"

namespace chainweight {

TimeWarp::TimeWarp(double horizon, std::vector<WarpSegment> segments)
    : horizon_(horizon), segments_(std::move(segments)) {
    if (!(horizon_ > 0) || !std::isfinite(horizon_))
        throw std::invalid_argument("warp horizon must be positive and finite");
    if (segments_.empty())
        throw std::invalid_argument("warp needs at least one segment");
    if (segments_.front().t != 0)
        throw std::invalid_argument("first warp segment must start at t=0");
    double prev = -1;
    for (const auto& seg : segments_) {
        if (!(seg.t > prev))
            throw std::invalid_argument("warp breakpoints must be strictly increasing");
        if (!(seg.t < horizon_))
            throw std::invalid_argument("warp breakpoints must lie below the horizon");
        if (!(seg.phi >= kMinResource))
            throw std::invalid_argument("warp factor must be > 0");
        prev = seg.t;
    }
    psi_.resize(segments_.size() + 1);
    psi_[0] = 0.0;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const double end = i + 1 < segments_.size() ? segments_[i + 1].t : horizon_;
        psi_[i + 1] = psi_[i] + (end - segments_[i].t) / segments_[i].phi;
    }
}

std::size_t TimeWarp::segment_index(double t) const {
    auto it = std::upper_bound(
        segments_.begin(), segments_.end(), t,
        [](double lhs, const WarpSegment& seg) { return lhs < seg.t; });
    return static_cast<std::size_t>(it - segments_.begin()) - 1;
}

double TimeWarp::phi_at(double t) const {
    if (!(t >= 0) || !(t <= horizon_))
        throw std::out_of_range("time outside [0, horizon]");
    return segments_[segment_index(t)].phi;
}

double TimeWarp::altered_time(double t) const {
    if (!(t >= 0) || !(t <= horizon_))
        throw std::out_of_range("time outside [0, horizon]");
    const std::size_t i = segment_index(t);
    return psi_[i] + (t - segments_[i].t) / segments_[i].phi;
}

double TimeWarp::inverse_altered_time(double tt) const {
    if (!(tt >= 0) || !(tt <= altered_horizon()))
        throw std::out_of_range("altered time outside [0, altered horizon]");
    // Last psi breakpoint <= tt.
    auto it = std::upper_bound(psi_.begin(), psi_.end() - 1, tt);
    const std::size_t i = static_cast<std::size_t>(it - psi_.begin()) - 1;
    return segments_[i].t + (tt - psi_[i]) * segments_[i].phi;
}

}  // namespace chainweight

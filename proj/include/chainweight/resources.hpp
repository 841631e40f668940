#pragma once

#include <cstddef>
#include <vector>

namespace chainweight {

/// Smallest admissible resource amount. Resources are physical quantities
/// that are never exactly zero in practice; constructors reject anything
/// below this floor.
inline constexpr double kMinResource = 1e-12;

/// Number of resources of each type: disk space, sequential computation
/// (VDF speed), and parallel computation (hash rate).
struct Dims {
    std::size_t space = 0;
    std::size_t vdf = 0;
    std::size_t work = 0;

    bool covers(const Dims& need) const {
        return space >= need.space && vdf >= need.vdf && work >= need.work;
    }
    friend bool operator==(const Dims&, const Dims&) = default;
};

/// Resource amounts at one instant: S is in storage units, V in sequential
/// steps per time unit, W in hashes per time unit. All components > 0.
struct ResourcePoint {
    std::vector<double> space;
    std::vector<double> vdf;
    std::vector<double> work;

    Dims dims() const { return {space.size(), vdf.size(), work.size()}; }
    friend bool operator==(const ResourcePoint&, const ResourcePoint&) = default;
};

/// Throws std::invalid_argument if any component is below kMinResource
/// (this also rejects NaN).
void validate_point(const ResourcePoint& p);

struct ProfileSegment {
    double t = 0;  // segment start; the segment runs to the next breakpoint
    ResourcePoint value;
};

struct TimedIntegral {
    std::vector<double> vdf;
    std::vector<double> work;
};

struct SpaceExtrema {
    std::vector<double> lo;
    std::vector<double> hi;
};

/// A right-continuous, piecewise-constant record of the resources available
/// over a finite time interval [0, T]. Segments are half-open [t_i, t_{i+1})
/// with the last one closed at T. Immutable after construction; all
/// operations are pure.
class ResourceProfile {
public:
    /// `segments` must start at t=0, have strictly increasing breakpoints
    /// below `horizon`, agree on dimensions and be strictly positive.
    ResourceProfile(double horizon, std::vector<ProfileSegment> segments);

    static ResourceProfile constant(double horizon, ResourcePoint value);

    double horizon() const { return horizon_; }
    const std::vector<ProfileSegment>& segments() const { return segments_; }
    Dims dims() const { return segments_.front().value.dims(); }

    /// Value at time t (right-continuous; t = T yields the last segment).
    const ResourcePoint& at(double t) const;

    /// Exact integral of the timed resources V and W over [a, b], summed
    /// segment by segment in closed form.
    TimedIntegral integrate_timed(double a, double b) const;

    /// Componentwise inf and sup of S over the open interval (a, b).
    SpaceExtrema space_extrema(double a, double b) const;

    /// Segment end (start of the next segment, or the horizon).
    double segment_end(std::size_t i) const;

private:
    std::size_t segment_index(double t) const;

    double horizon_;
    std::vector<ProfileSegment> segments_;
};

}  // namespace chainweight

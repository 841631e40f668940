#pragma once

#include <vector>

namespace chainweight {

struct WarpSegment {
    double t = 0;    // segment start
    double phi = 1;  // squeeze (>1) / stretch (<1) factor, > 0
};

/// A piecewise-constant time manipulation phi(t) over [0, T_end] together
/// with the derived altered-time map psi(t) = integral of 1/phi and its
/// inverse, both exact (psi is piecewise linear). Squeezing (phi > 1)
/// shortens the pretended duration while inflating recorded timed
/// resources; stretching is the reverse.
class TimeWarp {
public:
    TimeWarp(double horizon, std::vector<WarpSegment> segments);

    static TimeWarp identity(double horizon) { return constant(horizon, 1.0); }
    static TimeWarp constant(double horizon, double phi) {
        return TimeWarp(horizon, {{0.0, phi}});
    }

    double horizon() const { return horizon_; }
    /// psi(T_end), the duration the adversary pretends the interval took.
    double altered_horizon() const { return psi_.back(); }

    double altered_time(double t) const;          // psi
    double inverse_altered_time(double tt) const; // psi^{-1}
    double phi_at(double t) const;

    const std::vector<WarpSegment>& segments() const { return segments_; }

private:
    std::size_t segment_index(double t) const;

    double horizon_;
    std::vector<WarpSegment> segments_;
    std::vector<double> psi_;  // psi at each segment start, plus psi(T_end)
};

}  // namespace chainweight

#pragma once

#include <cstdint>
#include <cmath>

#include "chainweight/resources.hpp"

namespace chainweight {

/// Configuration for the randomized property checks and witness searches.
/// A fixed seed makes every check and report fully deterministic.
struct SamplerConfig {
    std::uint64_t seed = 0;
    std::size_t samples = 2048;
    double coord_lo = 1.0 / 16.0;  // coordinate range, log-uniform
    double coord_hi = 16.0;
    double tolerance = 1e-9;       // relative, for identity checks
};

namespace detail {

/// splitmix64: tiny, reproducible across toolchains (unlike the standard
/// distributions, whose output is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Log-uniform in [lo, hi].
    double next_log_uniform(double lo, double hi) {
        return lo * std::exp(next_unit() * std::log(hi / lo));
    }

    ResourcePoint next_point(const Dims& d, double lo, double hi) {
        ResourcePoint p;
        p.space.reserve(d.space);
        p.vdf.reserve(d.vdf);
        p.work.reserve(d.work);
        for (std::size_t i = 0; i < d.space; ++i) p.space.push_back(next_log_uniform(lo, hi));
        for (std::size_t i = 0; i < d.vdf; ++i) p.vdf.push_back(next_log_uniform(lo, hi));
        for (std::size_t i = 0; i < d.work; ++i) p.work.push_back(next_log_uniform(lo, hi));
        return p;
    }

private:
    std::uint64_t state_;
};

}  // namespace detail
}  // namespace chainweight

#pragma once

#include <optional>

#include "chainweight/resources.hpp"
#include "chainweight/time_warp.hpp"
#include "chainweight/weight_expr.hpp"

namespace chainweight {

enum class Provenance { honest, adversarial };

/// What a chain reflects over (altered) time. Shaped exactly like a resource
/// profile; the provenance tag records whose chain it is. An honest chain is
/// identical to the honest resource profile.
struct ChainProfile {
    ResourceProfile profile;
    Provenance provenance;
};

/// How the adversary fills its private chain. The default records the
/// maximum the warp allows at every instant (S(t), phi(t)V(t), phi(t)W(t)) —
/// optimal for monotone weight functions and what every synthesized attack
/// uses. An explicit profile (over altered time) may under-record; it is
/// validated against the bounds.
class RecordingPolicy {
public:
    static RecordingPolicy max_allowed() { return RecordingPolicy{}; }
    static RecordingPolicy explicit_profile(ResourceProfile recorded) {
        RecordingPolicy p;
        p.recorded_ = std::move(recorded);
        return p;
    }

    bool is_max_allowed() const { return !recorded_.has_value(); }
    const ResourceProfile& recorded() const { return *recorded_; }

private:
    std::optional<ResourceProfile> recorded_;
};

/// The chain the adversary presents after manipulating time: at altered time
/// tt with t = psi^{-1}(tt), it may record up to S(t) space and up to
/// phi(t)*V(t), phi(t)*W(t) timed resources. Output breakpoints are the
/// psi-images of the union of profile and warp breakpoints, so the result is
/// exact. Throws std::invalid_argument on horizon mismatch or when an
/// explicit recording exceeds a bound (the message names the resource and
/// time).
ChainProfile adversarial_chain(const ResourceProfile& resources, const TimeWarp& warp,
                               const RecordingPolicy& recording = RecordingPolicy::max_allowed());

/// Integral of Gamma over the profile: sum of Gamma(segment value) * length.
double profile_weight(const WeightExpr& expr, const ResourceProfile& profile);

inline double chain_weight(const WeightExpr& expr, const ChainProfile& chain) {
    return profile_weight(expr, chain.profile);
}

/// Attack admissibility per the security definition: the adversary's
/// resources must weigh at most the honest ones at every instant, and
/// strictly less on an interval of positive length.
struct PreconditionReport {
    bool weak_ok = false;    // Gamma(adv) <= Gamma(honest) everywhere
    bool strict_ok = false;  // a strict interval of length >= 1e-6 * horizon
    double strict_start = 0;
    double strict_end = 0;
    double first_violation_time = -1;  // where the weak bound fails, if it does

    bool ok() const { return weak_ok && strict_ok; }
};

/// Minimum relative length of the strict-inequality interval. The security
/// definition only asks for some interval of positive length; this floor is
/// a tooling choice to keep the check meaningful in floating point.
inline constexpr double kMinStrictIntervalFraction = 1e-6;

PreconditionReport check_preconditions(const WeightExpr& expr,
                                       const ResourceProfile& honest,
                                       const ResourceProfile& adversary);

}  // namespace chainweight

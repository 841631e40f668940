#pragma once

#include <optional>
#include <utility>

#include "chainweight/continuous.hpp"
#include "chainweight/properties.hpp"

namespace chainweight {

/// Which explicit construction applies. The squeeze case (1b) covers
/// violations with alpha > 1; stretch (1c) alpha < 1 with a weight drop;
/// 1d alpha < 1 with unchanged weight, split by whether the auxiliary
/// second point weighs more (A) or less (B). non_monotone is the
/// under-recording attack against non-monotone functions. The remaining
/// squeeze sub-case (alpha > 1 with no weight gain) is provably impossible
/// and is never emitted.
enum class CaseTag { case_1b, case_1c, case_1d_A, case_1d_B, non_monotone };

const char* to_string(CaseTag tag);

/// A violation of degree-one homogeneity in the timed resources, normalized
/// so that beta = Gamma(s, a*v, a*w) - a*Gamma(s, v, w) > 0 (stretch-side
/// violations are mapped over by replacing (v, w, a) with (a*v, a*w, 1/a)).
struct HomogeneityWitness {
    ResourcePoint point;
    double alpha = 1;  // != 1
    double beta = 0;   // > 0 after normalization
    CaseTag case_tag = CaseTag::case_1b;
    std::optional<ResourcePoint> second_point;  // 1d only
    std::optional<double> delta;                // 1d only: |Gamma' - Gamma|
};

/// Searches for a homogeneity violation: deterministic grid probes first
/// (all-ones point with alpha in {2, 1/2, 4, 1/4, 8, 1/8}), then seeded
/// random (point, alpha) draws. Returns nullopt when no violation is found
/// (the expression is presumed homogeneous). For witnesses in the
/// unchanged-weight case this also hunts for a second point of differing
/// weight; if none exists in the sampled region it throws
/// AttackInconclusiveError.
std::optional<HomogeneityWitness> find_homogeneity_witness(const WeightExpr& expr,
                                                           const SamplerConfig& cfg = {});

/// A monotonicity violation: points p < q with Gamma(p) > Gamma(q).
/// Always nullopt for pure-algebra trees (monotone by construction).
std::optional<std::pair<ResourcePoint, ResourcePoint>> find_nonmonotone_witness(
    const WeightExpr& expr, const SamplerConfig& cfg = {});

/// A complete private double-spending attack instance: who holds what, the
/// time manipulation, and how the private chain records resources.
struct AttackScenario {
    ResourceProfile honest;
    ResourceProfile adversary;
    TimeWarp warp;
    RecordingPolicy recording;
    double t0 = 0;  // length of the leading phase
    double t1 = 1;  // length of the closing phase (always 1)
    CaseTag case_tag = CaseTag::case_1b;

    double horizon() const { return t0 + t1; }
};

/// Builds the explicit attack for the matching proof case, with t0 set to
/// its exact lower bound (a tie already breaks security, which demands the
/// honest chain be strictly heavier). Throws AttackInconclusiveError if a
/// 1d witness lacks its second point.
AttackScenario synthesize_attack(const WeightExpr& expr, const HomogeneityWitness& witness);

/// The under-recording attack: the adversary holds the larger point but
/// records the smaller, heavier one, tying the honest chain with no warp.
AttackScenario synthesize_attack(const WeightExpr& expr,
                                 const std::pair<ResourcePoint, ResourcePoint>& witness);

struct AttackOutcome {
    double honest_weight = 0;
    double adversarial_weight = 0;
    bool success = false;           // adversarial >= honest - 1e-9
    bool preconditions_ok = false;  // admissible per the security definition
    PreconditionReport preconditions;
};

/// Runs the scenario: honest chain weight, adversarial chain weight under
/// the scenario's recording policy, precondition check. Precondition
/// failures are reported, not raised.
AttackOutcome run_attack(const WeightExpr& expr, const AttackScenario& scenario);

}  // namespace chainweight

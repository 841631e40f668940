#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "chainweight/resources.hpp"
#include "chainweight/weight_expr.hpp"

namespace chainweight {

/// How a block records the space that was available during its timespan.
/// Space is a snapshot, not an integral: honest parties are assumed to catch
/// their minimum, the adversary its maximum (the worst case for security).
/// An explicit value must be attainable, i.e. lie in [inf, sup) over the
/// open span (equal to the constant when space does not vary).
struct SpacePolicy {
    enum class Kind { use_min, use_max, explicit_value };
    Kind kind = Kind::use_min;
    std::vector<double> value;  // explicit_value only

    static SpacePolicy min() { return {Kind::use_min, {}}; }
    static SpacePolicy max() { return {Kind::use_max, {}}; }
    static SpacePolicy explicit_value_of(std::vector<double> v) {
        return {Kind::explicit_value, std::move(v)};
    }
};

/// One block: a timespan plus the resources it reflects. Timed resources are
/// exact integrals over the span; space is a snapshot per the policy.
/// Extrema over the open span are cached for smoothness computations.
struct Block {
    double start = 0;
    double end = 0;
    std::vector<double> space_recorded;
    std::vector<double> vdf_recorded;
    std::vector<double> work_recorded;
    SpaceExtrema space_ex;
    SpaceExtrema vdf_ex;   // extrema of the V rates (not the integral)
    SpaceExtrema work_ex;

    double duration() const { return end - start; }
    ResourcePoint recorded_point() const {
        return {space_recorded, vdf_recorded, work_recorded};
    }
};

enum class ChainKind { honest, adversarial };

/// Blocks with non-overlapping spans. Honest chains partition [0, T] into
/// unit blocks; adversarial chains may leave gaps.
struct Blockchain {
    std::vector<Block> blocks;
    ChainKind kind = ChainKind::honest;
};

Block make_block(const ResourceProfile& profile, double start, double end,
                 const SpacePolicy& policy);

/// Unit blocks [i, i+1] covering the whole horizon, min space policy.
/// The horizon must be a positive integer (fractional tail blocks are
/// rejected rather than guessed).
Blockchain honest_discretize(const ResourceProfile& profile);

/// Arbitrary ordered, non-overlapping spans within [0, T], max space policy.
Blockchain adversarial_discretize(const ResourceProfile& profile,
                                  const std::vector<std::pair<double, double>>& spans);

/// Smallest xi >= 1 bounding max <= xi * min per block, per resource
/// component, across all three resource types. 1 for constant profiles.
double smoothness(const Blockchain& chain);

/// Sum of per-block weights Gamma(S_b, V_b, W_b).
double blockchain_weight(const WeightExpr& expr, const Blockchain& chain);

/// The quantitative security argument for the discrete model, evaluated on a
/// concrete instance: with a pointwise weight gap delta between honest and
/// adversarial resources and xi-smooth chains satisfying xi^4 <= delta,
///
///   Weight(honest blocks) >= (1/xi^2) cweight(honest resources)
///                          >  xi^2 cweight(adversarial resources)
///                         >= Weight(adversarial blocks).
///
/// All four quantities and the three comparisons are reported; precondition
/// violations are reported, not raised.
struct TheoremChainReport {
    double delta = 1;
    double xi = 1;  // asserted, or the measured max smoothness of the chains
    double honest_smoothness = 1;
    double adversarial_smoothness = 1;
    bool gap_ok = false;         // delta * Gamma(adv(t)) < Gamma(honest(t)) for all t
    bool smoothness_ok = false;  // both chains xi-smooth and xi^4 <= delta

    double honest_block_weight = 0;
    double honest_scaled = 0;  // (1/xi^2) * cweight(honest resources)
    double adv_scaled = 0;     // xi^2 * cweight(adversarial resources)
    double adv_block_weight = 0;

    bool ineq_honest = false;  // honest_block_weight >= honest_scaled
    bool ineq_middle = false;  // honest_scaled > adv_scaled
    bool ineq_adv = false;     // adv_scaled >= adv_block_weight

    bool preconditions_ok() const { return gap_ok && smoothness_ok; }
    bool chain_holds() const { return ineq_honest && ineq_middle && ineq_adv; }
};

TheoremChainReport verify_theorem_chain(const WeightExpr& expr,
                                        const ResourceProfile& honest,
                                        const ResourceProfile& adversary,
                                        const Blockchain& honest_chain,
                                        const Blockchain& adversarial_chain,
                                        double delta,
                                        std::optional<double> xi = std::nullopt);

}  // namespace chainweight

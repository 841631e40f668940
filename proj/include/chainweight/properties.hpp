#pragma once

#include <optional>
#include <string>

#include "chainweight/sampler.hpp"
#include "chainweight/weight_expr.hpp"

namespace chainweight {

enum class PropertyKind { monotone, homogeneous_timed, subhomogeneous_space };

/// Concrete counterexample for a failed property. Replayable: re-evaluating
/// reproduces a discrepancy above the check tolerance.
struct PropertyWitness {
    ResourcePoint point;
    std::optional<ResourcePoint> second_point;  // monotonicity violations only
    double alpha = 1.0;                         // scaling checks only
    /// homogeneity: Gamma(s, a*v, a*w) - a*Gamma(s, v, w)  (the paper's beta)
    /// subhomogeneity: Gamma(a*s, v, w) - a*Gamma(s, v, w) (positive excess)
    /// monotonicity: Gamma(point) - Gamma(second_point)    (positive drop)
    double discrepancy = 0.0;
};

struct PropertyReport {
    PropertyKind property = PropertyKind::monotone;
    bool holds = false;
    std::optional<PropertyWitness> witness;
    std::size_t samples_checked = 0;
    bool symbolic = false;  // decided by structural rules rather than sampling
};

/// Monotonicity check. The whole combinator algebra composes monotonically,
/// so pure-algebra trees are certified structurally; trees with opaque nodes
/// fall back to sampled point pairs p <= p'.
PropertyReport check_monotone(const WeightExpr& expr, const SamplerConfig& cfg = {});

/// Degree-one homogeneity in the timed resources (V, W): the condition that
/// makes time-warping weight-neutral. Structural when the tree determines a
/// scaling degree; otherwise sampled with alpha log-uniform in [1/8, 8] plus
/// the fixed grid {1/4, 1/2, 2, 4}.
PropertyReport check_homogeneous_timed(const WeightExpr& expr, const SamplerConfig& cfg = {});

/// Subhomogeneity in S ("at most linear in space"): Gamma(aS,V,W) <= a*Gamma
/// for a >= 1. Structural when the tree's space-scaling bound is <= 1;
/// otherwise sampled with alpha in [1, 8].
PropertyReport check_subhomogeneous_space(const WeightExpr& expr, const SamplerConfig& cfg = {});

struct Classification {
    bool continuous_secure = false;    // monotone and homogeneous in (V, W)
    bool discrete_sufficient = false;  // additionally subhomogeneous in S
    PropertyReport monotone;
    PropertyReport homogeneous;
    PropertyReport subhomogeneous;

    /// True when every holds=true verdict carries a structural certificate.
    /// A sampled-only "secure" verdict is weaker (no counterexample found in
    /// the sampled box) and is reported as inconclusive by the CLI.
    bool fully_symbolic() const {
        return (!monotone.holds || monotone.symbolic) &&
               (!homogeneous.holds || homogeneous.symbolic) &&
               (!subhomogeneous.holds || subhomogeneous.symbolic);
    }
};

/// Security verdicts for the continuous and discrete models. Throws
/// VacuousWeightError for constant expressions. discrete_sufficient is a
/// sufficiency verdict only; no necessity holds in the discrete model.
Classification classify(const WeightExpr& expr, const SamplerConfig& cfg = {});

const char* to_string(PropertyKind kind);

}  // namespace chainweight

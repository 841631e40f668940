#pragma once

#include <vector>

#include "chainweight/discrete.hpp"
#include "chainweight/resources.hpp"
#include "chainweight/weight_expr.hpp"

namespace chainweight {

/// A replotting attack instance. The adversary holds constant resources
/// (space N, timed rates adv_vdf / adv_work) and may re-initialize its space
/// under fresh keys m times within one block, appearing to hold (m+1)*N
/// space. Each replot burns replot_time of wall time during which the timed
/// resources accrue nothing toward the attack block (the busy model).
struct ReplotScenario {
    std::vector<double> base_space;  // N
    std::vector<double> adv_vdf;     // sequential steps per time unit
    std::vector<double> adv_work;    // hashes per time unit
    double replot_time = 2;          // rho > 1
    int replot_count = 0;            // m >= 0
    ResourceProfile honest_profile;
    WeightExpr expr;

    double horizon() const { return honest_profile.horizon(); }
};

/// Protocol rule: a block b is valid iff difficulty <= Gamma(b) <= eta *
/// difficulty. With eta < rho, a single replot already costs more time than
/// the cap lets it earn, which neutralizes single-epoch replotting.
struct DifficultyBand {
    double difficulty = 1;  // D > 0
    double eta = 1;         // band width factor, >= 1
};

/// The adversary's single attack block over [0, T]: records (m+1)*N space,
/// and timed integrals over only the non-replotting time T - m*rho.
/// Throws std::invalid_argument when m*rho > T.
Block replot_block(const ReplotScenario& scenario);
Block replot_block(const ReplotScenario& scenario, int replots);

struct StrategySpan {
    double start = 0;
    double end = 0;
    int replots = 0;
};

struct RaceOutcome {
    double honest_weight = 0;
    double adversarial_weight = 0;
    bool adversary_wins = false;  // a tie counts as a win for the adversary
    std::vector<StrategySpan> best_strategy;
    int total_replots = 0;
    bool honest_all_valid = true;      // defended races: honest blocks in band
    bool defense_applicable = false;   // defended races: eta < rho held
};

/// Undefended race: honest unit blocks against the best single replot block
/// over m in {0, ..., floor(T / rho)} (exhaustive).
RaceOutcome simulate_replot_race(const ReplotScenario& scenario);

struct BlockValidity {
    std::size_t index = 0;
    double weight = 0;
    bool valid = false;
    int failed_bound = 0;  // -1 below difficulty, +1 above eta * difficulty
};

struct ValidityReport {
    std::vector<BlockValidity> blocks;
    bool all_valid = true;
};

ValidityReport apply_difficulty_band(const WeightExpr& expr, const Blockchain& chain,
                                     const DifficultyBand& band);

/// Defended race: the adversary enumerates block spans on a 0.25-time grid
/// with per-block replot counts; a block whose raw weight falls below the
/// difficulty is invalid (dropped), one above the cap is under-recorded down
/// to eta * D. Honest blocks outside the band are dropped too. With
/// eta < rho and honest per-block weight >= D the honest side must win; any
/// contrary outcome is a counterexample surfaced by the caller's checks.
RaceOutcome simulate_defended_race(const ReplotScenario& scenario,
                                   const DifficultyBand& band);

/// A weight function factored as Gamma_1(S) * Gamma_2(V, W).
struct FactoredWeight {
    WeightExpr space_part;
    WeightExpr timed_part;
};

/// Variant defense for factored weight functions: every block must record
/// timed resources with Gamma_2(V_b, W_b) = D exactly (the timed difficulty
/// pins block duration), with no cap on the space part. Sound when Gamma_1
/// is subhomogeneous. Gamma_2 must be homogeneous of degree one so the
/// required block duration is well defined; the honest profile must be
/// constant.
RaceOutcome simulate_pinned_race(const ReplotScenario& scenario,
                                 const FactoredWeight& factored, double difficulty);

}  // namespace chainweight

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chainweight/attack.hpp"
#include "chainweight/replot.hpp"
#include "chainweight/resources.hpp"
#include "chainweight/time_warp.hpp"

namespace chainweight {

/// On-disk scenario description (JSON, schema version 1):
///
///   {
///     "version": 1,
///     "weight_dsl": "pow(W1, 2)",
///     "seed": 42,
///     "dimensions": [k1, k2, k3],                      // optional check
///     "profiles": { "honest": { "horizon": T,
///         "segments": [ { "t": 0, "S": [..], "V": [..], "W": [..] }, .. ] }, .. },
///     "warps": { "attack": { "horizon": T,
///         "segments": [ { "t": 0, "phi": 2 }, .. ] }, .. },
///     "discrete": { "adversary_spans": [[a, b], ..],
///                   "delta": 2.0, "xi": 1.2 },          // optional section
///     "replot": { "base_space": [..], "adv_vdf": [..], "adv_work": [..],
///                 "replot_time": 2, "replot_count": 1,
///                 "band": { "difficulty": 1.21, "eta": 1.5 },
///                 "factored": { "space_dsl": "S1", "timed_dsl": "V1" } },
///     "attack": { "case": "1b", "t0": 2, "t1": 1,
///                 "recording": "max-allowed" | "<profile name>" }
///   }
///
/// Profiles referenced by the discrete/replot/attack sections default to the
/// names "honest" and "adversary"; warps to "attack". Validation failures
/// throw ScenarioError carrying the JSON field path.
struct ScenarioFile {
    int version = 1;
    std::string weight_dsl;
    std::uint64_t seed = 0;
    std::optional<Dims> dimensions;
    std::map<std::string, ResourceProfile> profiles;
    std::map<std::string, TimeWarp> warps;

    struct Discrete {
        std::string honest_profile = "honest";
        std::string adversary_profile = "adversary";
        std::vector<std::pair<double, double>> adversary_spans;
        std::optional<double> delta;
        std::optional<double> xi;
    };
    std::optional<Discrete> discrete;

    struct Replot {
        std::vector<double> base_space;
        std::vector<double> adv_vdf;
        std::vector<double> adv_work;
        double replot_time = 2;
        int replot_count = 0;
        std::string honest_profile = "honest";
        std::optional<DifficultyBand> band;
        std::optional<std::pair<std::string, std::string>> factored;  // space/timed DSL
    };
    std::optional<Replot> replot;

    struct Attack {
        std::string case_tag;
        double t0 = 0;
        double t1 = 1;
        std::string honest_profile = "honest";
        std::string adversary_profile = "adversary";
        std::string warp = "attack";
        std::string recording = "max-allowed";
    };
    std::optional<Attack> attack;

    static ScenarioFile from_json(const nlohmann::json& j);
    static ScenarioFile load(const std::string& path);
    nlohmann::json to_json() const;
    void save(const std::string& path) const;

    const ResourceProfile& profile(const std::string& name) const;
    const TimeWarp& warp(const std::string& name) const;
};

nlohmann::json profile_to_json(const ResourceProfile& p);
ResourceProfile profile_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json warp_to_json(const TimeWarp& w);
TimeWarp warp_from_json(const nlohmann::json& j, const std::string& path);

/// Serializes a synthesized attack into a self-contained, replayable
/// scenario file.
ScenarioFile attack_to_scenario(const std::string& weight_dsl, const AttackScenario& attack,
                                std::uint64_t seed);

/// Rebuilds the attack instance from a scenario file's attack section.
AttackScenario attack_from_scenario(const ScenarioFile& file);

}  // namespace chainweight

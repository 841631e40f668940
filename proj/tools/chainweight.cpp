// chainweight: classify blockchain weight functions against private
// double-spending, synthesize and replay the explicit attacks, and simulate
// the discrete-block and replotting models.
//
// Exit codes: 0 secure / attack succeeded / race completed,
//             1 usage or scenario errors,
//             2 insecure verdict, refusal, or failed assertion,
//             3 inconclusive (sampled-only verdict).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chainweight/attack.hpp"
#include "chainweight/continuous.hpp"
#include "chainweight/discrete.hpp"
#include "chainweight/errors.hpp"
#include "chainweight/properties.hpp"
#include "chainweight/replot.hpp"
#include "chainweight/scenario.hpp"

namespace cw = chainweight;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInsecure = 2;
constexpr int kExitInconclusive = 3;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt_vec(const std::vector<double>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += fmt(xs[i]);
    }
    return out + "]";
}

std::string fmt_point(const cw::ResourcePoint& p) {
    return "S=" + fmt_vec(p.space) + " V=" + fmt_vec(p.vdf) + " W=" + fmt_vec(p.work);
}

std::string fmt_profile(const cw::ResourceProfile& p) {
    std::string out;
    for (std::size_t i = 0; i < p.segments().size(); ++i) {
        if (i) out += "; ";
        out += fmt_point(p.segments()[i].value) + " on [" + fmt(p.segments()[i].t) + ", " +
               fmt(p.segment_end(i)) + (i + 1 == p.segments().size() ? "]" : ")");
    }
    return out;
}

std::string fmt_warp(const cw::TimeWarp& w) {
    std::string out;
    for (std::size_t i = 0; i < w.segments().size(); ++i) {
        if (i) out += "; ";
        const double end =
            i + 1 < w.segments().size() ? w.segments()[i + 1].t : w.horizon();
        out += "phi=" + fmt(w.segments()[i].phi) + " on [" + fmt(w.segments()[i].t) +
               ", " + fmt(end) + (i + 1 == w.segments().size() ? "]" : ")");
    }
    return out;
}

json point_to_json(const cw::ResourcePoint& p) {
    return {{"S", p.space}, {"V", p.vdf}, {"W", p.work}};
}

json witness_to_json(const cw::PropertyWitness& w) {
    json j{{"point", point_to_json(w.point)},
           {"alpha", w.alpha},
           {"discrepancy", w.discrepancy}};
    if (w.second_point) j["second_point"] = point_to_json(*w.second_point);
    return j;
}

json report_to_json(const cw::PropertyReport& r) {
    json j{{"property", cw::to_string(r.property)},
           {"holds", r.holds},
           {"certificate", r.symbolic ? "structural" : "sampled"},
           {"samples_checked", r.samples_checked}};
    if (r.witness) j["witness"] = witness_to_json(*r.witness);
    return j;
}

void print_property(const char* label, const cw::PropertyReport& r) {
    std::string line = std::string(label) + ": " + (r.holds ? "yes" : "no") + " (" +
                       (r.symbolic ? "structural" : "sampled") + ")";
    if (r.witness) {
        line += "; witness " + fmt_point(r.witness->point);
        if (r.witness->second_point)
            line += " vs " + fmt_point(*r.witness->second_point);
        else
            line += " alpha=" + fmt(r.witness->alpha);
        line += " discrepancy=" + fmt(r.witness->discrepancy);
    }
    std::cout << line << "\n";
}

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::size_t samples = 2048;
    double tolerance = 1e-9;
    bool json_out = false;
    std::string csv_path;
    bool seed_set = false;
    bool samples_set = false;
    bool tolerance_set = false;
};

cw::SamplerConfig sampler_for(const GlobalOpts& g, const cw::ScenarioFile& file) {
    cw::SamplerConfig cfg;
    cfg.seed = g.seed_set ? g.seed : file.seed;
    if (g.samples_set) cfg.samples = g.samples;
    if (g.tolerance_set) cfg.tolerance = g.tolerance;
    return cfg;
}

cw::WeightExpr parse_expr_checked(const cw::ScenarioFile& file) {
    cw::WeightExpr expr = cw::WeightExpr::parse(file.weight_dsl);
    if (file.dimensions && !file.dimensions->covers(expr.required_dims()))
        throw cw::ScenarioError("declared dimensions do not cover the expression",
                                "dimensions");
    return expr;
}

// ---------------------------------------------------------------------------
// classify

int cmd_classify(const std::string& path, const GlobalOpts& g) {
    const cw::ScenarioFile file = cw::ScenarioFile::load(path);
    const cw::WeightExpr expr = parse_expr_checked(file);
    const cw::Classification c = cw::classify(expr, sampler_for(g, file));

    const bool inconclusive = c.continuous_secure && !c.fully_symbolic();
    if (g.json_out) {
        json j{{"weight_dsl", expr.to_string()},
               {"continuous_secure", c.continuous_secure},
               {"discrete_sufficient", c.discrete_sufficient},
               {"certificate", c.fully_symbolic() ? "structural" : "sampled"},
               {"properties",
                json::array({report_to_json(c.monotone), report_to_json(c.homogeneous),
                             report_to_json(c.subhomogeneous)})}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "expr: " << expr.to_string() << "\n";
        print_property("monotone", c.monotone);
        print_property("homogeneous in (V,W)", c.homogeneous);
        print_property("subhomogeneous in S", c.subhomogeneous);
        std::cout << "continuous model: "
                  << (c.continuous_secure
                          ? (inconclusive ? "secure (sampled only)" : "secure")
                          : "INSECURE")
                  << "\n";
        std::cout << "discrete sufficiency: " << (c.discrete_sufficient ? "yes" : "no")
                  << "\n";
    }
    if (inconclusive) return kExitInconclusive;
    return c.continuous_secure ? kExitOk : kExitInsecure;
}

// ---------------------------------------------------------------------------
// attack

json outcome_to_json(const cw::AttackOutcome& out) {
    return {{"honest_weight", out.honest_weight},
            {"adversarial_weight", out.adversarial_weight},
            {"success", out.success},
            {"preconditions_ok", out.preconditions_ok}};
}

void print_outcome(const cw::AttackOutcome& out) {
    std::cout << "honest weight      = " << fmt(out.honest_weight) << "\n"
              << "adversarial weight = " << fmt(out.adversarial_weight) << "\n";
    std::cout << "preconditions: " << (out.preconditions_ok ? "ok" : "VIOLATED");
    if (out.preconditions.strict_ok)
        std::cout << " (strict on [" << fmt(out.preconditions.strict_start) << ", "
                  << fmt(out.preconditions.strict_end) << "])";
    std::cout << "\n";
    std::cout << (out.success ? "attack succeeds (adversarial chain at least ties)"
                              : "attack FAILS")
              << "\n";
}

void print_scenario(const cw::AttackScenario& sc) {
    std::cout << "case: " << cw::to_string(sc.case_tag) << "  t0=" << fmt(sc.t0)
              << " t1=" << fmt(sc.t1) << " horizon=" << fmt(sc.horizon()) << "\n";
    std::cout << "  honest:    " << fmt_profile(sc.honest) << "\n";
    std::cout << "  adversary: " << fmt_profile(sc.adversary) << "\n";
    std::cout << "  warp:      " << fmt_warp(sc.warp) << "\n";
    if (!sc.recording.is_max_allowed())
        std::cout << "  recorded:  " << fmt_profile(sc.recording.recorded()) << "\n";
}

int cmd_attack(const std::string& path, const std::string& out_path, const GlobalOpts& g) {
    const cw::ScenarioFile file = cw::ScenarioFile::load(path);
    const cw::WeightExpr expr = parse_expr_checked(file);
    const cw::SamplerConfig cfg = sampler_for(g, file);
    const cw::Classification c = cw::classify(expr, cfg);

    if (c.continuous_secure) {
        if (!c.fully_symbolic()) {
            std::cout << "inconclusive: no violation found in the sampled region; "
                         "cannot synthesize an attack\n";
            return kExitInconclusive;
        }
        std::cout << "refused: the weight function is secure in the continuous model; "
                     "no private double-spending attack exists\n";
        return kExitInsecure;
    }

    cw::AttackScenario scenario = [&] {
        if (!c.monotone.holds) {
            auto pair = cw::find_nonmonotone_witness(expr, cfg);
            if (!pair) throw cw::AttackInconclusiveError("monotonicity witness vanished");
            return cw::synthesize_attack(expr, *pair);
        }
        auto witness = cw::find_homogeneity_witness(expr, cfg);
        if (!witness)
            throw cw::AttackInconclusiveError(
                "classification says insecure but no homogeneity witness was found");
        return cw::synthesize_attack(expr, *witness);
    }();

    const cw::AttackOutcome outcome = cw::run_attack(expr, scenario);
    cw::ScenarioFile replay = cw::attack_to_scenario(expr.to_string(), scenario, cfg.seed);
    replay.save(out_path);

    if (g.json_out) {
        json j = replay.to_json();
        j["outcome"] = outcome_to_json(outcome);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "expr: " << expr.to_string() << "\n";
        print_scenario(scenario);
        print_outcome(outcome);
        std::cout << "replay file: " << out_path << "\n";
    }
    return outcome.success && outcome.preconditions_ok ? kExitOk : kExitError;
}

int cmd_replay(const std::string& path, const GlobalOpts& g) {
    const cw::ScenarioFile file = cw::ScenarioFile::load(path);
    const cw::WeightExpr expr = parse_expr_checked(file);
    const cw::AttackScenario scenario = cw::attack_from_scenario(file);
    const cw::AttackOutcome outcome = cw::run_attack(expr, scenario);
    if (g.json_out) {
        std::cout << outcome_to_json(outcome).dump(2) << "\n";
    } else {
        std::cout << "expr: " << expr.to_string() << "\n";
        print_scenario(scenario);
        print_outcome(outcome);
    }
    return outcome.success ? kExitOk : kExitInsecure;
}

// ---------------------------------------------------------------------------
// race

void write_race_csv(const std::string& path, const cw::WeightExpr& expr,
                    const cw::ResourceProfile& honest, const cw::ResourceProfile& adv,
                    const cw::ChainProfile* chain) {
    std::ofstream out(path);
    if (!out) throw cw::ScenarioError("cannot write CSV '" + path + "'", "");
    out << "series,start,end,gamma\n";
    auto emit = [&](const char* name, const cw::ResourceProfile& p) {
        for (std::size_t i = 0; i < p.segments().size(); ++i)
            out << name << ',' << fmt(p.segments()[i].t) << ',' << fmt(p.segment_end(i))
                << ',' << fmt(expr.eval(p.segments()[i].value)) << "\n";
    };
    emit("honest", honest);
    emit("adversary_resources", adv);
    if (chain) emit("adversarial_chain", chain->profile);
}

void write_chain_csv(std::ostream& out, const cw::WeightExpr& expr,
                     const cw::Blockchain& chain) {
    const cw::Dims d = chain.blocks.empty() ? cw::Dims{} : cw::Dims{
        chain.blocks.front().space_recorded.size(),
        chain.blocks.front().vdf_recorded.size(),
        chain.blocks.front().work_recorded.size()};
    out << "block_index,start,end";
    for (std::size_t k = 0; k < d.space; ++k) out << ",S" << k + 1;
    for (std::size_t k = 0; k < d.vdf; ++k) out << ",V" << k + 1;
    for (std::size_t k = 0; k < d.work; ++k) out << ",W" << k + 1;
    out << ",block_weight\n";
    for (std::size_t i = 0; i < chain.blocks.size(); ++i) {
        const cw::Block& b = chain.blocks[i];
        out << i << ',' << fmt(b.start) << ',' << fmt(b.end);
        for (double x : b.space_recorded) out << ',' << fmt(x);
        for (double x : b.vdf_recorded) out << ',' << fmt(x);
        for (double x : b.work_recorded) out << ',' << fmt(x);
        out << ',' << fmt(expr.eval(b.recorded_point())) << "\n";
    }
}

int cmd_race(const std::string& path, const std::string& chain_csv, const GlobalOpts& g) {
    const cw::ScenarioFile file = cw::ScenarioFile::load(path);
    const cw::WeightExpr expr = parse_expr_checked(file);

    const std::string honest_name =
        file.discrete ? file.discrete->honest_profile : "honest";
    const std::string adv_name =
        file.discrete ? file.discrete->adversary_profile : "adversary";
    const cw::ResourceProfile& honest = file.profile(honest_name);
    const cw::ResourceProfile& adv = file.profile(adv_name);

    json j;
    const double honest_w = cw::profile_weight(expr, honest);
    const double adv_resource_w = cw::profile_weight(expr, adv);
    const cw::PreconditionReport pre = cw::check_preconditions(expr, honest, adv);

    std::optional<cw::ChainProfile> chain;
    if (file.warps.count("attack"))
        chain = cw::adversarial_chain(adv, file.warp("attack"));

    if (!g.json_out) {
        std::cout << "expr: " << expr.to_string() << "\n";
        std::cout << "continuous:\n";
        std::cout << "  honest weight             = " << fmt(honest_w) << "\n";
        std::cout << "  adversary resource weight = " << fmt(adv_resource_w) << "\n";
        if (chain)
            std::cout << "  adversarial chain weight  = " << fmt(cw::chain_weight(expr, *chain))
                      << "  (warped, altered horizon " << fmt(chain->profile.horizon())
                      << ")\n";
        std::cout << "  preconditions: " << (pre.ok() ? "ok" : "not satisfied");
        if (pre.strict_ok)
            std::cout << " (strict on [" << fmt(pre.strict_start) << ", "
                      << fmt(pre.strict_end) << "])";
        std::cout << "\n";
    } else {
        j["weight_dsl"] = expr.to_string();
        j["continuous"] = {{"honest_weight", honest_w},
                           {"adversary_resource_weight", adv_resource_w},
                           {"preconditions_ok", pre.ok()}};
        if (chain) j["continuous"]["adversarial_chain_weight"] = cw::chain_weight(expr, *chain);
    }

    if (file.discrete) {
        const cw::Blockchain hchain = cw::honest_discretize(honest);
        const cw::Blockchain achain =
            cw::adversarial_discretize(adv, file.discrete->adversary_spans);
        const double hw = cw::blockchain_weight(expr, hchain);
        const double aw = cw::blockchain_weight(expr, achain);
        if (!g.json_out) {
            std::cout << "discrete:\n";
            std::cout << "  honest blocks: " << hchain.blocks.size()
                      << ", weight = " << fmt(hw) << "\n";
            std::cout << "  adversarial blocks: " << achain.blocks.size()
                      << ", weight = " << fmt(aw) << "\n";
        } else {
            j["discrete"] = {{"honest_blocks", hchain.blocks.size()},
                             {"honest_weight", hw},
                             {"adversarial_blocks", achain.blocks.size()},
                             {"adversarial_weight", aw}};
        }
        if (file.discrete->delta) {
            const cw::TheoremChainReport rep =
                cw::verify_theorem_chain(expr, honest, adv, hchain, achain,
                                         *file.discrete->delta, file.discrete->xi);
            if (!g.json_out) {
                std::cout << "  inequality chain (delta=" << fmt(rep.delta)
                          << ", xi=" << fmt(rep.xi) << "):\n";
                std::cout << "    gap precondition: " << (rep.gap_ok ? "ok" : "VIOLATED")
                          << "\n";
                std::cout << "    smoothness: " << (rep.smoothness_ok ? "ok" : "VIOLATED")
                          << " (measured honest=" << fmt(rep.honest_smoothness)
                          << ", adversary=" << fmt(rep.adversarial_smoothness) << ")\n";
                std::cout << "    Weight(honest blocks) >= cweight(honest)/xi^2 : "
                          << fmt(rep.honest_block_weight) << " vs " << fmt(rep.honest_scaled)
                          << " : " << (rep.ineq_honest ? "holds" : "FAILS") << "\n";
                std::cout << "    cweight(honest)/xi^2 > xi^2*cweight(adversary): "
                          << fmt(rep.honest_scaled) << " vs " << fmt(rep.adv_scaled) << " : "
                          << (rep.ineq_middle ? "holds" : "FAILS") << "\n";
                std::cout << "    xi^2*cweight(adversary) >= Weight(adv blocks) : "
                          << fmt(rep.adv_scaled) << " vs " << fmt(rep.adv_block_weight)
                          << " : " << (rep.ineq_adv ? "holds" : "FAILS") << "\n";
            } else {
                j["discrete"]["inequality_chain"] = {
                    {"delta", rep.delta},
                    {"xi", rep.xi},
                    {"gap_ok", rep.gap_ok},
                    {"smoothness_ok", rep.smoothness_ok},
                    {"honest_block_weight", rep.honest_block_weight},
                    {"honest_scaled", rep.honest_scaled},
                    {"adv_scaled", rep.adv_scaled},
                    {"adv_block_weight", rep.adv_block_weight},
                    {"holds", rep.chain_holds()}};
            }
        }
        if (!chain_csv.empty()) {
            std::ofstream out(chain_csv);
            if (!out) throw cw::ScenarioError("cannot write CSV '" + chain_csv + "'", "");
            out << "# honest chain\n";
            write_chain_csv(out, expr, hchain);
            out << "# adversarial chain\n";
            write_chain_csv(out, expr, achain);
        }
    }
    if (!g.csv_path.empty())
        write_race_csv(g.csv_path, expr, honest, adv, chain ? &*chain : nullptr);
    if (g.json_out) std::cout << j.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// replot

json race_to_json(const cw::RaceOutcome& out) {
    json spans = json::array();
    for (const auto& s : out.best_strategy)
        spans.push_back({{"start", s.start}, {"end", s.end}, {"m", s.replots}});
    return {{"honest_weight", out.honest_weight},
            {"adversarial_weight", out.adversarial_weight},
            {"best_strategy", {{"m", out.total_replots}, {"spans", std::move(spans)}}},
            {"winner", out.adversary_wins ? "adversary" : "honest"}};
}

void print_race(const char* label, const cw::RaceOutcome& out) {
    std::cout << label << ": honest=" << fmt(out.honest_weight)
              << " adversary=" << fmt(out.adversarial_weight) << " (m=" << out.total_replots;
    if (!out.best_strategy.empty()) {
        std::cout << ", spans";
        for (const auto& s : out.best_strategy)
            std::cout << " [" << fmt(s.start) << "," << fmt(s.end) << "]x" << s.replots;
    }
    std::cout << ") -> " << (out.adversary_wins ? "adversary wins" : "honest wins") << "\n";
}

int cmd_replot(const std::string& path, bool assert_defense, const GlobalOpts& g) {
    const cw::ScenarioFile file = cw::ScenarioFile::load(path);
    const cw::WeightExpr expr = parse_expr_checked(file);
    if (!file.replot) throw cw::ScenarioError("missing required section", "replot");
    const auto& r = *file.replot;

    const cw::ReplotScenario scenario{r.base_space,      r.adv_vdf, r.adv_work,
                                      r.replot_time,     r.replot_count,
                                      file.profile(r.honest_profile), expr};

    json j;
    const cw::RaceOutcome undefended = cw::simulate_replot_race(scenario);
    if (g.json_out)
        j["undefended"] = race_to_json(undefended);
    else
        print_race("undefended race", undefended);

    if (r.band) {
        if (assert_defense && !(r.band->eta < r.replot_time)) {
            std::cerr << "defense assertion failed: eta=" << fmt(r.band->eta)
                      << " is not below the replot time rho=" << fmt(r.replot_time) << "\n";
            return kExitInsecure;
        }
        const cw::RaceOutcome defended = cw::simulate_defended_race(scenario, *r.band);
        if (g.json_out) {
            j["defended"] = race_to_json(defended);
            j["defended"]["eta_below_rho"] = defended.defense_applicable;
        } else {
            std::cout << "difficulty band: D=" << fmt(r.band->difficulty)
                      << " eta=" << fmt(r.band->eta)
                      << (defended.defense_applicable ? " (eta < rho)" : " (eta >= rho!)")
                      << "\n";
            print_race("defended race", defended);
        }
        if (assert_defense && defended.adversary_wins) {
            std::cerr << "defense assertion failed: adversary still wins\n";
            return kExitInsecure;
        }
    }
    if (r.factored) {
        const cw::FactoredWeight factored{cw::WeightExpr::parse(r.factored->first),
                                          cw::WeightExpr::parse(r.factored->second)};
        const double d = r.band ? r.band->difficulty : 1.0;
        const cw::RaceOutcome pinned = cw::simulate_pinned_race(scenario, factored, d);
        if (g.json_out)
            j["pinned"] = race_to_json(pinned);
        else
            print_race("pinned race", pinned);
    }
    if (g.json_out) std::cout << j.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weight-function security toolkit for heaviest-chain blockchains"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "sampler seed (overrides the scenario file)")
        ->each([&](const std::string&) { g.seed_set = true; });
    app.add_option("--samples", g.samples, "sampling budget per property check")
        ->each([&](const std::string&) { g.samples_set = true; });
    app.add_option("--tolerance", g.tolerance, "relative tolerance for identity checks")
        ->each([&](const std::string&) { g.tolerance_set = true; });
    app.add_flag("--json", g.json_out, "machine-readable JSON reports");
    app.add_option("--csv", g.csv_path, "write per-segment weight series CSV (race)");

    std::string file;
    std::string attack_out = "attack_scenario.json";
    std::string replay_file;
    std::string chain_csv;
    bool assert_defense = false;

    CLI::App* classify = app.add_subcommand("classify", "security verdict for weight_dsl");
    classify->fallthrough();
    classify->add_option("file", file, "scenario file")->required();

    CLI::App* attack = app.add_subcommand("attack", "synthesize and run the explicit attack");
    attack->fallthrough();
    attack->add_option("file", file, "scenario file")->required();
    attack->add_option("--out", attack_out, "where to write the replayable scenario");
    attack->add_option("--replay", replay_file, "re-run a saved attack scenario instead");

    CLI::App* race = app.add_subcommand("race", "continuous/discrete weight race");
    race->fallthrough();
    race->add_option("file", file, "scenario file")->required();
    race->add_option("--chain-csv", chain_csv, "write block dump CSV for both chains");

    CLI::App* replot = app.add_subcommand("replot", "replotting attack and defenses");
    replot->fallthrough();
    replot->add_option("file", file, "scenario file")->required();
    replot->add_flag("--assert-defense", assert_defense,
                     "exit 2 unless the band defense applies and holds");

    CLI::App* replay = app.add_subcommand("replay", "re-run a saved attack scenario");
    replay->fallthrough();
    replay->add_option("file", file, "scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) return cmd_classify(file, g);
        if (attack->parsed())
            return replay_file.empty() ? cmd_attack(file, attack_out, g)
                                       : cmd_replay(replay_file, g);
        if (race->parsed()) return cmd_race(file, chain_csv, g);
        if (replot->parsed()) return cmd_replot(file, assert_defense, g);
        if (replay->parsed()) return cmd_replay(file, g);
    } catch (const cw::VacuousWeightError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const cw::AttackInconclusiveError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const cw::ParseError& e) {
        std::cerr << "weight_dsl parse error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

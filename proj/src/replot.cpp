#include "chainweight/replot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chainweight {

namespace {

constexpr double kGridStep = 0.25;
constexpr double kRelTol = 1e-9;
constexpr double kBandSlack = 1e-12;  // relative, so exact-boundary blocks pass

void validate_scenario(const ReplotScenario& s) {
    if (!(s.replot_time > 1))
        throw std::invalid_argument("replot time must exceed 1 time unit");
    if (s.replot_count < 0) throw std::invalid_argument("replot count must be >= 0");
    if (s.base_space.empty())
        throw std::invalid_argument("replot scenario needs a base space vector");
    for (double x : s.base_space)
        if (!(x > 0)) throw std::invalid_argument("base space must be positive");
}

ResourcePoint attack_block_point(const ReplotScenario& s, int m, double timed_span) {
    ResourcePoint p;
    p.space.reserve(s.base_space.size());
    for (double n : s.base_space) p.space.push_back((m + 1) * n);
    for (double v : s.adv_vdf) p.vdf.push_back(v * timed_span);
    for (double w : s.adv_work) p.work.push_back(w * timed_span);
    return p;
}

double band_lo(const DifficultyBand& b) { return b.difficulty * (1 - kBandSlack); }
double band_hi(const DifficultyBand& b) { return b.eta * b.difficulty * (1 + kBandSlack); }

}  // namespace

Block replot_block(const ReplotScenario& scenario) {
    return replot_block(scenario, scenario.replot_count);
}

Block replot_block(const ReplotScenario& scenario, int replots) {
    validate_scenario(scenario);
    const double t = scenario.horizon();
    const double busy = replots * scenario.replot_time;
    if (busy > t)
        throw std::invalid_argument("infeasible: replotting takes longer than the horizon");

    Block b;
    b.start = 0;
    b.end = t;
    const ResourcePoint p = attack_block_point(scenario, replots, t - busy);
    b.space_recorded = p.space;
    b.vdf_recorded = p.vdf;
    b.work_recorded = p.work;
    b.space_ex = {p.space, p.space};
    b.vdf_ex = {scenario.adv_vdf, scenario.adv_vdf};
    b.work_ex = {scenario.adv_work, scenario.adv_work};
    return b;
}

RaceOutcome simulate_replot_race(const ReplotScenario& scenario) {
    validate_scenario(scenario);
    RaceOutcome out;
    out.honest_weight =
        blockchain_weight(scenario.expr, honest_discretize(scenario.honest_profile));

    const double t = scenario.horizon();
    const int m_max = static_cast<int>(std::floor(t / scenario.replot_time + kRelTol));
    int best_m = 0;
    double best = -1;
    for (int m = 0; m <= m_max; ++m) {
        const Block b = replot_block(scenario, m);
        const double w = scenario.expr.eval(b.recorded_point());
        if (w > best) {
            best = w;
            best_m = m;
        }
    }
    out.adversarial_weight = best;
    out.total_replots = best_m;
    out.best_strategy = {{0.0, t, best_m}};
    out.adversary_wins = out.adversarial_weight >= out.honest_weight - kRelTol;
    return out;
}

ValidityReport apply_difficulty_band(const WeightExpr& expr, const Blockchain& chain,
                                     const DifficultyBand& band) {
    if (!(band.difficulty > 0)) throw std::invalid_argument("difficulty must be positive");
    if (!(band.eta >= 1)) throw std::invalid_argument("band width factor must be >= 1");
    ValidityReport rep;
    rep.blocks.reserve(chain.blocks.size());
    for (std::size_t i = 0; i < chain.blocks.size(); ++i) {
        const double w = expr.eval(chain.blocks[i].recorded_point());
        BlockValidity v{i, w, true, 0};
        if (w < band_lo(band)) {
            v.valid = false;
            v.failed_bound = -1;
        } else if (w > band_hi(band)) {
            v.valid = false;
            v.failed_bound = +1;
        }
        rep.all_valid = rep.all_valid && v.valid;
        rep.blocks.push_back(v);
    }
    return rep;
}

RaceOutcome simulate_defended_race(const ReplotScenario& scenario,
                                   const DifficultyBand& band) {
    validate_scenario(scenario);
    if (!(band.difficulty > 0)) throw std::invalid_argument("difficulty must be positive");
    if (!(band.eta >= 1)) throw std::invalid_argument("band width factor must be >= 1");

    RaceOutcome out;
    out.defense_applicable = band.eta < scenario.replot_time;

    // Honest side: prescribed unit blocks, only band-valid ones count.
    const Blockchain honest = honest_discretize(scenario.honest_profile);
    const ValidityReport honest_validity =
        apply_difficulty_band(scenario.expr, honest, band);
    out.honest_all_valid = honest_validity.all_valid;
    for (const auto& v : honest_validity.blocks)
        if (v.valid) out.honest_weight += v.weight;

    // Adversary: best packing of band-valid blocks over the grid. A block
    // over a span of length L with m replots accrues timed resources for
    // L - m*rho; raw weight above the cap is under-recorded down to eta*D,
    // raw weight below the difficulty cannot be fixed and the block is
    // dropped.
    const double t = scenario.horizon();
    std::vector<double> grid;
    for (double g = 0;; g += kGridStep) {
        if (g > t - kGridStep / 2) break;
        grid.push_back(g);
    }
    grid.push_back(t);
    const std::size_t n = grid.size();

    struct Choice {
        std::size_t from = 0;
        int replots = -1;  // -1: idle step
    };
    std::vector<double> best(n, 0.0);
    std::vector<Choice> how(n);
    for (std::size_t i = 1; i < n; ++i) {
        best[i] = best[i - 1];
        how[i] = {i - 1, -1};
        for (std::size_t j = 0; j < i; ++j) {
            const double len = grid[i] - grid[j];
            const int m_max =
                static_cast<int>(std::floor(len / scenario.replot_time + kRelTol));
            for (int m = 0; m <= m_max; ++m) {
                const double timed = len - m * scenario.replot_time;
                const double raw =
                    scenario.expr.eval(attack_block_point(scenario, m, timed));
                if (raw < band_lo(band)) continue;  // too light: invalid
                const double value = std::min(raw, band.eta * band.difficulty);
                if (best[j] + value > best[i]) {
                    best[i] = best[j] + value;
                    how[i] = {j, m};
                }
            }
        }
    }
    out.adversarial_weight = best[n - 1];
    for (std::size_t i = n - 1; i > 0;) {
        const Choice c = how[i];
        if (c.replots >= 0) {
            out.best_strategy.push_back({grid[c.from], grid[i], c.replots});
            out.total_replots += c.replots;
        }
        i = c.from;
    }
    std::reverse(out.best_strategy.begin(), out.best_strategy.end());
    out.adversary_wins = out.adversarial_weight >= out.honest_weight - kRelTol;
    return out;
}

RaceOutcome simulate_pinned_race(const ReplotScenario& scenario,
                                 const FactoredWeight& factored, double difficulty) {
    validate_scenario(scenario);
    if (!(difficulty > 0)) throw std::invalid_argument("difficulty must be positive");
    const Dims sd = factored.space_part.required_dims();
    if (sd.vdf != 0 || sd.work != 0)
        throw std::invalid_argument("space part must reference only space variables");
    const Dims td = factored.timed_part.required_dims();
    if (td.space != 0)
        throw std::invalid_argument("timed part must reference only timed variables");
    const auto deg = factored.timed_part.timed_scaling_degree();
    if (!deg || std::abs(*deg - 1.0) > 1e-12)
        throw std::invalid_argument(
            "timed part must be homogeneous of degree one so the pinned block "
            "duration is well defined");
    if (scenario.honest_profile.segments().size() != 1)
        throw std::invalid_argument("pinned race expects a constant honest profile");

    // Gamma_2(d*v, d*w) = d * Gamma_2(v, w) = D fixes the block duration d.
    const ResourcePoint honest_rates = scenario.honest_profile.segments().front().value;
    ResourcePoint honest_timed{{}, honest_rates.vdf, honest_rates.work};
    const double honest_rate = factored.timed_part.eval(honest_timed);
    const double d_honest = difficulty / honest_rate;

    ResourcePoint adv_timed{{}, scenario.adv_vdf, scenario.adv_work};
    const double adv_rate = factored.timed_part.eval(adv_timed);
    const double d_adv = difficulty / adv_rate;

    const double t = scenario.horizon();
    RaceOutcome out;
    out.defense_applicable = true;

    const ResourcePoint honest_space{honest_rates.space, {}, {}};
    const double honest_blocks = std::floor(t / d_honest + kRelTol);
    out.honest_weight =
        honest_blocks * factored.space_part.eval(honest_space) * difficulty;

    // Adversary strategy: k blocks, each with some replot count; a block
    // with m replots costs d_adv + m*rho time and earns Gamma_1((m+1)N) * D.
    const int max_blocks = static_cast<int>(std::floor(t / d_adv + kRelTol));
    const int max_replots = static_cast<int>(std::floor(t / scenario.replot_time + kRelTol));
    if (max_blocks > 256 || max_replots > 256)
        throw std::invalid_argument("pinned race strategy space too large for desk scale");

    auto gamma1 = [&](int m) {
        ResourcePoint p;
        for (double x : scenario.base_space) p.space.push_back((m + 1) * x);
        return factored.space_part.eval(p);
    };

    // best[k][j]: max weight with k blocks and j replots already spent.
    const int kb = max_blocks + 1, jb = max_replots + 1;
    std::vector<std::vector<double>> memo(kb, std::vector<double>(jb, -1.0));
    std::vector<std::vector<int>> pick(kb, std::vector<int>(jb, -1));
    auto time_used = [&](int k, int j) { return k * d_adv + j * scenario.replot_time; };

    for (int k = kb - 1; k >= 0; --k) {
        for (int j = jb - 1; j >= 0; --j) {
            if (time_used(k, j) > t + kRelTol) continue;
            double best_here = 0;
            int best_m = -1;
            for (int m = 0; k + 1 < kb && j + m < jb; ++m) {
                if (time_used(k + 1, j + m) > t + kRelTol) break;
                const double v = gamma1(m) * difficulty + std::max(0.0, memo[k + 1][j + m]);
                if (v > best_here) {
                    best_here = v;
                    best_m = m;
                }
            }
            memo[k][j] = best_here;
            pick[k][j] = best_m;
        }
    }
    out.adversarial_weight = std::max(0.0, memo[0][0]);
    double at = 0;
    for (int k = 0, j = 0; pick[k][j] >= 0;) {
        const int m = pick[k][j];
        const double len = d_adv + m * scenario.replot_time;
        out.best_strategy.push_back({at, at + len, m});
        out.total_replots += m;
        at += len;
        ++k;
        j += m;
    }
    out.adversary_wins = out.adversarial_weight >= out.honest_weight - kRelTol;
    return out;
}

}  // namespace chainweight

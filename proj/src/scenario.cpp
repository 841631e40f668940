#include "chainweight/scenario.hpp"

#include <fstream>

#include "chainweight/errors.hpp"

namespace chainweight {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
    throw ScenarioError(msg, path);
}

const json& member(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) bad(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(path.empty() ? key : path + "." + key, "missing required field");
    return *it;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) bad(path, "expected a number");
    return j.get<double>();
}

std::vector<double> number_list(const json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) bad(path, "expected a string");
    return j.get<std::string>();
}

template <typename F>
auto with_path(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const ScenarioError&) {
        throw;
    } catch (const std::exception& e) {
        bad(path, e.what());
    }
}

}  // namespace

json profile_to_json(const ResourceProfile& p) {
    json segs = json::array();
    for (const auto& s : p.segments())
        segs.push_back({{"t", s.t},
                        {"S", s.value.space},
                        {"V", s.value.vdf},
                        {"W", s.value.work}});
    return {{"horizon", p.horizon()}, {"segments", std::move(segs)}};
}

ResourceProfile profile_from_json(const json& j, const std::string& path) {
    const double horizon = number(member(j, "horizon", path), path + ".horizon");
    const json& segs = member(j, "segments", path);
    if (!segs.is_array() || segs.empty()) bad(path + ".segments", "expected a non-empty array");
    std::vector<ProfileSegment> out;
    out.reserve(segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const std::string sp = path + ".segments[" + std::to_string(i) + "]";
        const json& seg = segs[i];
        ProfileSegment ps;
        ps.t = number(member(seg, "t", sp), sp + ".t");
        if (seg.contains("S")) ps.value.space = number_list(seg["S"], sp + ".S");
        if (seg.contains("V")) ps.value.vdf = number_list(seg["V"], sp + ".V");
        if (seg.contains("W")) ps.value.work = number_list(seg["W"], sp + ".W");
        out.push_back(std::move(ps));
    }
    return with_path(path, [&] { return ResourceProfile(horizon, std::move(out)); });
}

json warp_to_json(const TimeWarp& w) {
    json segs = json::array();
    for (const auto& s : w.segments()) segs.push_back({{"t", s.t}, {"phi", s.phi}});
    return {{"horizon", w.horizon()}, {"segments", std::move(segs)}};
}

TimeWarp warp_from_json(const json& j, const std::string& path) {
    const double horizon = number(member(j, "horizon", path), path + ".horizon");
    const json& segs = member(j, "segments", path);
    if (!segs.is_array() || segs.empty()) bad(path + ".segments", "expected a non-empty array");
    std::vector<WarpSegment> out;
    out.reserve(segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const std::string sp = path + ".segments[" + std::to_string(i) + "]";
        out.push_back({number(member(segs[i], "t", sp), sp + ".t"),
                       number(member(segs[i], "phi", sp), sp + ".phi")});
    }
    return with_path(path, [&] { return TimeWarp(horizon, std::move(out)); });
}

ScenarioFile ScenarioFile::from_json(const json& j) {
    ScenarioFile f;
    if (!j.is_object()) bad("", "scenario must be a JSON object");
    f.version = j.contains("version")
                    ? static_cast<int>(number(j["version"], "version"))
                    : 1;
    if (f.version != 1) bad("version", "unsupported schema version");
    f.weight_dsl = text(member(j, "weight_dsl", ""), "weight_dsl");
    if (j.contains("seed")) f.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("dimensions")) {
        const auto dims = number_list(j["dimensions"], "dimensions");
        if (dims.size() != 3) bad("dimensions", "expected [k1, k2, k3]");
        f.dimensions = Dims{static_cast<std::size_t>(dims[0]),
                            static_cast<std::size_t>(dims[1]),
                            static_cast<std::size_t>(dims[2])};
    }
    if (j.contains("profiles")) {
        if (!j["profiles"].is_object()) bad("profiles", "expected an object");
        for (const auto& [name, pj] : j["profiles"].items())
            f.profiles.emplace(name, profile_from_json(pj, "profiles." + name));
    }
    if (j.contains("warps")) {
        if (!j["warps"].is_object()) bad("warps", "expected an object");
        for (const auto& [name, wj] : j["warps"].items())
            f.warps.emplace(name, warp_from_json(wj, "warps." + name));
    }
    if (j.contains("discrete")) {
        const json& d = j["discrete"];
        Discrete disc;
        if (d.contains("honest_profile")) disc.honest_profile = text(d["honest_profile"], "discrete.honest_profile");
        if (d.contains("adversary_profile"))
            disc.adversary_profile = text(d["adversary_profile"], "discrete.adversary_profile");
        if (d.contains("adversary_spans")) {
            const json& spans = d["adversary_spans"];
            if (!spans.is_array()) bad("discrete.adversary_spans", "expected an array");
            for (std::size_t i = 0; i < spans.size(); ++i) {
                const std::string sp = "discrete.adversary_spans[" + std::to_string(i) + "]";
                const auto pair = number_list(spans[i], sp);
                if (pair.size() != 2) bad(sp, "expected [start, end]");
                disc.adversary_spans.emplace_back(pair[0], pair[1]);
            }
        }
        if (d.contains("delta")) disc.delta = number(d["delta"], "discrete.delta");
        if (d.contains("xi")) disc.xi = number(d["xi"], "discrete.xi");
        f.discrete = std::move(disc);
    }
    if (j.contains("replot")) {
        const json& r = j["replot"];
        Replot rep;
        rep.base_space = number_list(member(r, "base_space", "replot"), "replot.base_space");
        if (r.contains("adv_vdf")) rep.adv_vdf = number_list(r["adv_vdf"], "replot.adv_vdf");
        if (r.contains("adv_work")) rep.adv_work = number_list(r["adv_work"], "replot.adv_work");
        rep.replot_time = number(member(r, "replot_time", "replot"), "replot.replot_time");
        if (r.contains("replot_count"))
            rep.replot_count = static_cast<int>(number(r["replot_count"], "replot.replot_count"));
        if (r.contains("honest_profile"))
            rep.honest_profile = text(r["honest_profile"], "replot.honest_profile");
        if (r.contains("band")) {
            DifficultyBand band;
            band.difficulty = number(member(r["band"], "difficulty", "replot.band"),
                                     "replot.band.difficulty");
            band.eta = number(member(r["band"], "eta", "replot.band"), "replot.band.eta");
            rep.band = band;
        }
        if (r.contains("factored")) {
            rep.factored = std::make_pair(
                text(member(r["factored"], "space_dsl", "replot.factored"),
                     "replot.factored.space_dsl"),
                text(member(r["factored"], "timed_dsl", "replot.factored"),
                     "replot.factored.timed_dsl"));
        }
        f.replot = std::move(rep);
    }
    if (j.contains("attack")) {
        const json& a = j["attack"];
        Attack at;
        at.case_tag = text(member(a, "case", "attack"), "attack.case");
        at.t0 = number(member(a, "t0", "attack"), "attack.t0");
        at.t1 = number(member(a, "t1", "attack"), "attack.t1");
        if (a.contains("honest_profile")) at.honest_profile = text(a["honest_profile"], "attack.honest_profile");
        if (a.contains("adversary_profile"))
            at.adversary_profile = text(a["adversary_profile"], "attack.adversary_profile");
        if (a.contains("warp")) at.warp = text(a["warp"], "attack.warp");
        if (a.contains("recording")) at.recording = text(a["recording"], "attack.recording");
        f.attack = std::move(at);
    }
    return f;
}

ScenarioFile ScenarioFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file '" + path + "'", "");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ScenarioError(std::string("invalid JSON: ") + e.what(), "");
    }
    return from_json(j);
}

json ScenarioFile::to_json() const {
    json j{{"version", version}, {"weight_dsl", weight_dsl}, {"seed", seed}};
    if (dimensions)
        j["dimensions"] = {dimensions->space, dimensions->vdf, dimensions->work};
    if (!profiles.empty()) {
        json p = json::object();
        for (const auto& [name, prof] : profiles) p[name] = profile_to_json(prof);
        j["profiles"] = std::move(p);
    }
    if (!warps.empty()) {
        json w = json::object();
        for (const auto& [name, warp] : warps) w[name] = warp_to_json(warp);
        j["warps"] = std::move(w);
    }
    if (discrete) {
        json d{{"honest_profile", discrete->honest_profile},
               {"adversary_profile", discrete->adversary_profile}};
        if (!discrete->adversary_spans.empty()) {
            json spans = json::array();
            for (const auto& [a, b] : discrete->adversary_spans) spans.push_back({a, b});
            d["adversary_spans"] = std::move(spans);
        }
        if (discrete->delta) d["delta"] = *discrete->delta;
        if (discrete->xi) d["xi"] = *discrete->xi;
        j["discrete"] = std::move(d);
    }
    if (replot) {
        json r{{"base_space", replot->base_space},
               {"adv_vdf", replot->adv_vdf},
               {"adv_work", replot->adv_work},
               {"replot_time", replot->replot_time},
               {"replot_count", replot->replot_count},
               {"honest_profile", replot->honest_profile}};
        if (replot->band)
            r["band"] = {{"difficulty", replot->band->difficulty}, {"eta", replot->band->eta}};
        if (replot->factored)
            r["factored"] = {{"space_dsl", replot->factored->first},
                             {"timed_dsl", replot->factored->second}};
        j["replot"] = std::move(r);
    }
    if (attack) {
        j["attack"] = {{"case", attack->case_tag},
                       {"t0", attack->t0},
                       {"t1", attack->t1},
                       {"honest_profile", attack->honest_profile},
                       {"adversary_profile", attack->adversary_profile},
                       {"warp", attack->warp},
                       {"recording", attack->recording}};
    }
    return j;
}

void ScenarioFile::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ScenarioError("cannot write scenario file '" + path + "'", "");
    out << to_json().dump(2) << '\n';
}

const ResourceProfile& ScenarioFile::profile(const std::string& name) const {
    auto it = profiles.find(name);
    if (it == profiles.end()) bad("profiles." + name, "profile not defined");
    return it->second;
}

const TimeWarp& ScenarioFile::warp(const std::string& name) const {
    auto it = warps.find(name);
    if (it == warps.end()) bad("warps." + name, "warp not defined");
    return it->second;
}

ScenarioFile attack_to_scenario(const std::string& weight_dsl, const AttackScenario& attack,
                                std::uint64_t seed) {
    ScenarioFile f;
    f.weight_dsl = weight_dsl;
    f.seed = seed;
    f.profiles.emplace("honest", attack.honest);
    f.profiles.emplace("adversary", attack.adversary);
    f.warps.emplace("attack", attack.warp);
    ScenarioFile::Attack a;
    a.case_tag = to_string(attack.case_tag);
    a.t0 = attack.t0;
    a.t1 = attack.t1;
    if (!attack.recording.is_max_allowed()) {
        f.profiles.emplace("recorded", attack.recording.recorded());
        a.recording = "recorded";
    }
    f.attack = std::move(a);
    return f;
}

AttackScenario attack_from_scenario(const ScenarioFile& file) {
    if (!file.attack) throw ScenarioError("missing required section", "attack");
    const auto& a = *file.attack;
    CaseTag tag;
    if (a.case_tag == "1b") tag = CaseTag::case_1b;
    else if (a.case_tag == "1c") tag = CaseTag::case_1c;
    else if (a.case_tag == "1d-A") tag = CaseTag::case_1d_A;
    else if (a.case_tag == "1d-B") tag = CaseTag::case_1d_B;
    else if (a.case_tag == "non-monotone") tag = CaseTag::non_monotone;
    else throw ScenarioError("unknown attack case '" + a.case_tag + "'", "attack.case");

    RecordingPolicy recording = a.recording == "max-allowed"
                                    ? RecordingPolicy::max_allowed()
                                    : RecordingPolicy::explicit_profile(file.profile(a.recording));
    return AttackScenario{file.profile(a.honest_profile), file.profile(a.adversary_profile),
                          file.warp(a.warp), std::move(recording), a.t0, a.t1, tag};
}

}  // namespace chainweight

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "chainweight/continuous.hpp"
#include "chainweight/discrete.hpp"
#include "oracles.hpp"

using namespace chainweight;
namespace cw = chainweight;
using testutil::pt;
using testutil::work_profile;

TEST_CASE("make_block: constant resources and exact integrals") {
    const auto p = ResourceProfile::constant(6.0, pt({1.1}, {1.1}, {}));
    const Block b = make_block(p, 0.0, 1.0, SpacePolicy::min());
    CHECK(b.space_recorded[0] == 1.1);
    CHECK(b.vdf_recorded[0] == doctest::Approx(1.1).epsilon(1e-12));
}

TEST_CASE("make_block: integral over a step, sup for the adversary") {
    const auto p = work_profile(3.0, {{0.0, 1.0}, {2.0, 2.0}});
    const Block b = make_block(p, 0.0, 3.0, SpacePolicy::min());
    CHECK(b.work_recorded[0] == doctest::Approx(4.0).epsilon(1e-12));

    const auto q = ResourceProfile(2.0, {{0.0, pt({1.0}, {1.0}, {})},
                                         {1.0, pt({3.0}, {1.0}, {})}});
    const Block adv = make_block(q, 0.0, 2.0, SpacePolicy::max());
    CHECK(adv.space_recorded[0] == 3.0);
    const Block hon = make_block(q, 0.0, 2.0, SpacePolicy::min());
    CHECK(hon.space_recorded[0] == 1.0);
}

TEST_CASE("make_block: explicit space values obey the attainability bound") {
    const auto q = ResourceProfile(2.0, {{0.0, pt({1.0}, {1.0}, {})},
                                         {1.0, pt({3.0}, {1.0}, {})}});
    const Block b = make_block(q, 0.0, 2.0, SpacePolicy::explicit_value_of({2.0}));
    CHECK(b.space_recorded[0] == 2.0);
    // sup is excluded when space varies on the span
    CHECK_THROWS_AS(make_block(q, 0.0, 2.0, SpacePolicy::explicit_value_of({3.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_block(q, 0.0, 2.0, SpacePolicy::explicit_value_of({0.5})),
                    std::invalid_argument);
    // constant space: only that constant is attainable
    const auto c = ResourceProfile::constant(1.0, pt({2.0}, {1.0}, {}));
    CHECK(make_block(c, 0.0, 1.0, SpacePolicy::explicit_value_of({2.0})).space_recorded[0] ==
          2.0);
    CHECK_THROWS_AS(make_block(c, 0.0, 1.0, SpacePolicy::explicit_value_of({1.9})),
                    std::invalid_argument);
}

TEST_CASE("honest discretization: unit blocks, integer horizons only") {
    const auto p = ResourceProfile::constant(6.0, pt({1.1}, {1.1}, {}));
    const Blockchain chain = honest_discretize(p);
    CHECK(chain.kind == ChainKind::honest);
    REQUIRE(chain.blocks.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(chain.blocks[i].start == static_cast<double>(i));
        CHECK(chain.blocks[i].end == static_cast<double>(i + 1));
    }

    const auto one = ResourceProfile::constant(1.0, pt({1.0}, {1.0}, {}));
    CHECK(honest_discretize(one).blocks.size() == 1);

    const auto frac = ResourceProfile::constant(2.5, pt({1.0}, {1.0}, {}));
    CHECK_THROWS_AS(honest_discretize(frac), std::invalid_argument);
}

TEST_CASE("honest discretization: constant profiles give equal block weights") {
    const auto chia = WeightExpr::parse("S1 * V1");
    const auto p = ResourceProfile::constant(5.0, pt({1.3}, {0.7}, {}));
    const Blockchain chain = honest_discretize(p);
    const double w0 = chia.eval(chain.blocks.front().recorded_point());
    for (const Block& b : chain.blocks)
        CHECK(chia.eval(b.recorded_point()) == doctest::Approx(w0).epsilon(1e-12));
}

TEST_CASE("adversarial discretization: gaps allowed, overlaps rejected") {
    const auto p = ResourceProfile::constant(6.0, pt({1.0}, {1.0}, {}));
    CHECK(adversarial_discretize(p, {{0.0, 4.0}}).blocks.size() == 1);
    CHECK(adversarial_discretize(p, {{0.0, 1.0}, {2.0, 3.0}}).blocks.size() == 2);
    CHECK(adversarial_discretize(p, {}).blocks.empty());
    CHECK_THROWS_AS(adversarial_discretize(p, {{0.0, 2.0}, {1.5, 3.0}}),
                    std::invalid_argument);
}

TEST_CASE("smoothness: constants, a doubling, and the multi-component maximum") {
    const auto c = ResourceProfile::constant(2.0, pt({1.0}, {2.0}, {3.0}));
    CHECK(smoothness(honest_discretize(c)) == 1.0);

    const auto dbl = work_profile(1.0, {{0.0, 1.0}, {0.5, 2.0}});
    CHECK(smoothness(honest_discretize(dbl)) == 2.0);

    const auto multi = ResourceProfile(1.0, {{0.0, pt({1.0, 4.0}, {1.0}, {})},
                                             {0.5, pt({1.5, 1.0}, {1.0}, {})}});
    CHECK(smoothness(honest_discretize(multi)) == 4.0);
}

TEST_CASE("blockchain weight: sums per-block weights; empty chain weighs zero") {
    const auto chia = WeightExpr::parse("S1 * V1");
    const auto p = ResourceProfile::constant(6.0, pt({1.1}, {1.1}, {}));
    CHECK(blockchain_weight(chia, honest_discretize(p)) ==
          doctest::Approx(6.0 * 1.21).epsilon(1e-12));
    CHECK(blockchain_weight(chia, adversarial_discretize(p, {})) == 0.0);
}

TEST_CASE("blockchain weight: permutation invariance and gap monotonicity") {
    cw::detail::Rng rng(71);
    const auto expr = WeightExpr::parse("S1 * V1 + W1");
    const auto p = testutil::random_profile(rng, {1, 1, 1}, 8.0, 6, 0.5, 2.0);
    Blockchain chain = adversarial_discretize(
        p, {{0.0, 1.5}, {2.0, 3.0}, {4.5, 7.0}, {7.25, 8.0}});
    const double w = blockchain_weight(expr, chain);
    std::reverse(chain.blocks.begin(), chain.blocks.end());
    CHECK(blockchain_weight(expr, chain) == doctest::Approx(w).epsilon(1e-12));

    // removing any block never increases the weight
    for (std::size_t drop = 0; drop < chain.blocks.size(); ++drop) {
        Blockchain fewer = chain;
        fewer.blocks.erase(fewer.blocks.begin() + static_cast<long>(drop));
        CHECK(blockchain_weight(expr, fewer) <= w);
    }
}

TEST_CASE("theorem chain: constant profiles with a clean gap") {
    const auto chia = WeightExpr::parse("S1 * V1");
    const auto honest = ResourceProfile::constant(6.0, pt({2.0}, {2.0}, {}));
    const auto adv = ResourceProfile::constant(6.0, pt({1.0}, {1.0}, {}));
    // gap: delta * 1 < 4 with delta = 2; xi = 1 chains
    const auto rep = verify_theorem_chain(chia, honest, adv, honest_discretize(honest),
                                          adversarial_discretize(adv, {{0.0, 6.0}}), 2.0);
    CHECK(rep.gap_ok);
    CHECK(rep.smoothness_ok);
    CHECK(rep.honest_smoothness == 1.0);
    CHECK(rep.ineq_honest);
    CHECK(rep.ineq_middle);
    CHECK(rep.ineq_adv);
    CHECK(rep.chain_holds());
}

TEST_CASE("theorem chain: fluctuating instance within the smoothness budget") {
    // adversary fluctuates by ratio 1.18 (1.18^4 = 1.94 <= delta = 2)
    const auto chia = WeightExpr::parse("S1 * V1");
    std::vector<ProfileSegment> segs;
    for (int i = 0; i < 6; ++i) {
        const double v = i % 2 ? 1.18 : 1.0;
        segs.push_back({1.5 * i, pt({v}, {v}, {})});
    }
    const ResourceProfile adv(9.0, std::move(segs));
    // honest: same shape, timed part scaled by 2.25 > delta * xi-slack
    std::vector<ProfileSegment> hsegs;
    for (const auto& s : adv.segments()) {
        ProfileSegment h = s;
        for (double& x : h.value.vdf) x *= 2.25;
        hsegs.push_back(std::move(h));
    }
    const ResourceProfile honest(9.0, std::move(hsegs));
    const auto rep = verify_theorem_chain(chia, honest, adv, honest_discretize(honest),
                                          adversarial_discretize(adv, {{0.5, 3.0}, {4.0, 8.5}}),
                                          2.0);
    CHECK(rep.gap_ok);
    CHECK(rep.smoothness_ok);
    CHECK(rep.chain_holds());
}

TEST_CASE("theorem chain: space spike breaks the budget and the middle inequality") {
    // S^2 * V is not subhomogeneous in S; a within-block space spike pushes
    // the measured smoothness past the delta budget, and the middle
    // inequality fails once xi reflects the spike
    const auto expr = WeightExpr::parse("pow(S1, 2) * V1");
    const ResourceProfile adv(6.0, {{0.0, pt({1.0}, {1.0}, {})},
                                    {2.0, pt({3.0}, {1.0}, {})},
                                    {2.5, pt({1.0}, {1.0}, {})}});
    // honest must clear delta * Gamma(adv) pointwise: Gamma(adv) peaks at 9
    const auto honest = ResourceProfile::constant(6.0, pt({5.0}, {1.0}, {}));
    const auto rep = verify_theorem_chain(expr, honest, adv, honest_discretize(honest),
                                          adversarial_discretize(adv, {{0.0, 6.0}}), 2.0);
    CHECK(rep.gap_ok);            // 2 * 9 < 25
    CHECK_FALSE(rep.smoothness_ok);  // xi = 3, xi^4 = 81 > 2
    CHECK_FALSE(rep.ineq_middle);    // 25*6/9 = 16.7 is not > 9 * cweight(adv)
}

TEST_CASE("theorem chain: holds across seeded random instances") {
    cw::detail::Rng rng(83);
    const char* exprs[] = {"W1", "S1 * V1", "min(W1, W2)",
                           "pow(W1,0.5) * pow(W2,0.5)", "0.3 * W1 + 0.7 * W2"};
    for (int iter = 0; iter < 100; ++iter) {
        const auto expr = WeightExpr::parse(exprs[iter % 5]);
        const Dims d = expr.required_dims();
        const double xi0 = rng.next_log_uniform(1.0, 1.3);
        const double delta = std::pow(xi0, 4.0) * 1.02;
        const double lambda = delta * 1.02;
        const double horizon = 4.0 + static_cast<double>(rng.next_u64() % 4);

        // adversary: values fluctuate within [base, xi0*base] per coordinate
        const std::size_t nsegs = 2 + rng.next_u64() % 4;
        const ResourcePoint base = rng.next_point(d, 0.5, 2.0);
        std::vector<double> breaks{0.0};
        for (std::size_t i = 1; i < nsegs; ++i)
            breaks.push_back(rng.next_unit() * horizon);
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
        std::vector<ProfileSegment> asegs, hsegs;
        for (double t : breaks) {
            ResourcePoint v = base;
            for (double& x : v.space) x *= rng.next_log_uniform(1.0, xi0);
            for (double& x : v.vdf) x *= rng.next_log_uniform(1.0, xi0);
            for (double& x : v.work) x *= rng.next_log_uniform(1.0, xi0);
            ResourcePoint h = v;
            for (double& x : h.vdf) x *= lambda;
            for (double& x : h.work) x *= lambda;
            asegs.push_back({t, std::move(v)});
            hsegs.push_back({t, std::move(h)});
        }
        const ResourceProfile adv(horizon, std::move(asegs));
        const ResourceProfile honest(horizon, std::move(hsegs));

        // random non-overlapping adversarial spans
        std::vector<std::pair<double, double>> spans;
        double at = rng.next_unit();
        while (at + 0.5 < horizon) {
            const double len = 0.5 + rng.next_unit() * 1.5;
            const double end = std::min(horizon, at + len);
            spans.emplace_back(at, end);
            at = end + rng.next_unit();
        }
        const auto rep = verify_theorem_chain(expr, honest, adv, honest_discretize(honest),
                                              adversarial_discretize(adv, spans), delta);
        REQUIRE(rep.gap_ok);
        REQUIRE(rep.smoothness_ok);
        REQUIRE_MESSAGE(rep.chain_holds(), exprs[iter % 5]);
    }
}

TEST_CASE("honest chain weight with xi = 1 equals the continuous weight exactly") {
    // constant-per-block profiles collapse the xi^2 factors
    const auto expr = WeightExpr::parse("S1 * V1");
    std::vector<ProfileSegment> segs;
    cw::detail::Rng rng(97);
    for (int i = 0; i < 5; ++i) segs.push_back({static_cast<double>(i), rng.next_point({1, 1, 0}, 0.5, 2.0)});
    const ResourceProfile p(5.0, std::move(segs));
    const Blockchain chain = honest_discretize(p);
    CHECK(smoothness(chain) == 1.0);
    CHECK(blockchain_weight(expr, chain) ==
          doctest::Approx(profile_weight(expr, p)).epsilon(1e-12));
}

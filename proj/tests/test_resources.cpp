#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "chainweight/resources.hpp"
#include "oracles.hpp"

using namespace chainweight;
namespace cw = chainweight;
using testutil::pt;
using testutil::work_profile;

TEST_CASE("evaluate: constant profile") {
    const auto p = ResourceProfile::constant(5.0, pt({2.0}, {3.0}, {4.0}));
    CHECK(p.at(2.5) == pt({2.0}, {3.0}, {4.0}));
    CHECK(p.at(0.0) == pt({2.0}, {3.0}, {4.0}));
    CHECK(p.at(5.0) == pt({2.0}, {3.0}, {4.0}));
}

TEST_CASE("evaluate: right-continuity at a breakpoint") {
    const auto p = work_profile(3.0, {{0.0, 1.0}, {2.0, 2.0}});
    CHECK(p.at(2.0).work[0] == 2.0);
    CHECK(p.at(1.999).work[0] == 1.0);
    CHECK(p.at(3.0).work[0] == 2.0);
}

TEST_CASE("evaluate: domain errors") {
    const auto p = ResourceProfile::constant(1.0, pt({1.0}, {}, {}));
    CHECK_THROWS_AS(p.at(-0.1), std::out_of_range);
    CHECK_THROWS_AS(p.at(1.1), std::out_of_range);
}

TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(ResourceProfile::constant(1.0, pt({0.0}, {}, {})),
                    std::invalid_argument);
    CHECK_THROWS_AS(ResourceProfile::constant(1.0, pt({-1.0}, {}, {})),
                    std::invalid_argument);
    CHECK_THROWS_AS(ResourceProfile::constant(0.0, pt({1.0}, {}, {})),
                    std::invalid_argument);
    // first breakpoint must be 0
    CHECK_THROWS_AS(ResourceProfile(1.0, {{0.5, pt({1.0}, {}, {})}}),
                    std::invalid_argument);
    // breakpoints strictly increasing and below horizon
    CHECK_THROWS_AS(ResourceProfile(2.0, {{0.0, pt({1.0}, {}, {})},
                                          {0.0, pt({2.0}, {}, {})}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ResourceProfile(2.0, {{0.0, pt({1.0}, {}, {})},
                                          {2.0, pt({2.0}, {}, {})}}),
                    std::invalid_argument);
    // dimension agreement across segments
    CHECK_THROWS_AS(ResourceProfile(2.0, {{0.0, pt({1.0}, {}, {})},
                                          {1.0, pt({1.0, 1.0}, {}, {})}}),
                    std::invalid_argument);
}

TEST_CASE("integrate_timed: constant times length") {
    const auto p = ResourceProfile::constant(6.0, pt({}, {1.0}, {}));
    const auto r = p.integrate_timed(0.0, 6.0);
    CHECK(r.vdf[0] == 6.0);
}

TEST_CASE("integrate_timed: two segments, frozen oracle value") {
    const auto p = work_profile(3.0, {{0.0, 1.0}, {2.0, 2.0}});
    const auto r = p.integrate_timed(0.0, 3.0);
    CHECK(r.work[0] == doctest::Approx(4.0).epsilon(1e-12));
    const auto oracle = testutil::riemann_timed(p, 0.0, 3.0);
    CHECK(std::abs(r.work[0] - oracle.work[0]) < 1e-3);
}

TEST_CASE("integrate_timed: partial span") {
    const auto p = ResourceProfile::constant(2.0, pt({}, {3.0}, {}));
    CHECK(p.integrate_timed(1.0, 1.5).vdf[0] == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("integrate_timed: bounds errors") {
    const auto p = ResourceProfile::constant(2.0, pt({}, {1.0}, {}));
    CHECK_THROWS_AS(p.integrate_timed(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(p.integrate_timed(1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(p.integrate_timed(-0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(p.integrate_timed(0.0, 2.5), std::invalid_argument);
}

TEST_CASE("space_extrema: constant, two segments, open-interval semantics") {
    const auto c = ResourceProfile::constant(1.0, pt({1.1}, {}, {}));
    auto ex = c.space_extrema(0.0, 1.0);
    CHECK(ex.lo[0] == 1.1);
    CHECK(ex.hi[0] == 1.1);

    const auto p = ResourceProfile(2.0, {{0.0, pt({1.0}, {}, {})},
                                         {1.0, pt({3.0}, {}, {})}});
    ex = p.space_extrema(0.0, 2.0);
    CHECK(ex.lo[0] == 1.0);
    CHECK(ex.hi[0] == 3.0);

    const auto q = ResourceProfile(2.0, {{0.0, pt({5.0}, {}, {})},
                                         {1.0, pt({2.0}, {}, {})}});
    // The open interval (0.5, 1.0) excludes the jump at t=1.
    ex = q.space_extrema(0.5, 1.0);
    CHECK(ex.lo[0] == 5.0);
    CHECK(ex.hi[0] == 5.0);
}

TEST_CASE("property: integration is additive and scales linearly") {
    cw::detail::Rng rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        const auto p = testutil::random_profile(rng, {1, 1, 2}, 8.0, 6, 0.5, 2.0);
        const double a = rng.next_unit() * 3.0;
        const double b = a + 0.1 + rng.next_unit() * 2.0;
        const double c = b + 0.1 + rng.next_unit() * 2.0;
        const auto ab = p.integrate_timed(a, b);
        const auto bc = p.integrate_timed(b, c);
        const auto ac = p.integrate_timed(a, c);
        for (std::size_t k = 0; k < ac.work.size(); ++k)
            CHECK(ac.work[k] ==
                  doctest::Approx(ab.work[k] + bc.work[k]).epsilon(1e-12));
        for (std::size_t k = 0; k < ac.vdf.size(); ++k)
            CHECK(ac.vdf[k] == doctest::Approx(ab.vdf[k] + bc.vdf[k]).epsilon(1e-12));

        // scaling all values by lambda scales integrals by lambda
        const double lambda = 1.0 + rng.next_unit() * 3.0;
        std::vector<ProfileSegment> scaled;
        for (const auto& seg : p.segments()) {
            ProfileSegment s = seg;
            for (double& x : s.value.space) x *= lambda;
            for (double& x : s.value.vdf) x *= lambda;
            for (double& x : s.value.work) x *= lambda;
            scaled.push_back(std::move(s));
        }
        const ResourceProfile ps(p.horizon(), std::move(scaled));
        const auto sc = ps.integrate_timed(a, c);
        for (std::size_t k = 0; k < ac.vdf.size(); ++k)
            CHECK(sc.vdf[k] == doctest::Approx(lambda * ac.vdf[k]).epsilon(1e-12));
    }
}

TEST_CASE("property: extrema bound every interior evaluation") {
    cw::detail::Rng rng(11);
    for (int iter = 0; iter < 30; ++iter) {
        const auto p = testutil::random_profile(rng, {2, 0, 0}, 5.0, 6, 0.25, 4.0);
        const double a = rng.next_unit() * 2.0;
        const double b = a + 0.05 + rng.next_unit() * 2.5;
        const auto ex = p.space_extrema(a, b);
        for (int i = 0; i < 20; ++i) {
            const double t = a + (b - a) * (0.001 + 0.998 * rng.next_unit());
            const auto& s = p.at(t).space;
            for (std::size_t k = 0; k < s.size(); ++k) {
                CHECK(ex.lo[k] <= s[k]);
                CHECK(s[k] <= ex.hi[k]);
            }
        }
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "detzeta/determinant.hpp"

using namespace detzeta;

TEST_CASE("the four neutral cases") {
    // F-multiplier +1: base [min(0, lE), 1].
    SlitSet s = slit_set(0.5, 1.0, 1);
    CHECK(s.case_tag == "F=+1");
    CHECK(s.base_lo == 0.0);
    CHECK(s.base_hi == 1.0);
    CHECK(s.scale == 1.0);

    s = slit_set(-0.5, 1.0, 1);
    CHECK(s.base_lo == -0.5);
    CHECK(s.base_hi == 1.0);

    // E-multiplier +1 with expanding F: scaled by 1/|lF|.
    s = slit_set(1.0, 2.0, 1);
    CHECK(s.case_tag == "E=+1");
    CHECK(s.scale == doctest::Approx(0.5));
    CHECK(s.base_lo == 0.0);
    CHECK(s.base_hi == 1.0);
    // Effective segment [0, 0.5].
    CHECK(slit_membership(s, {0.49, 0}, 1e-12));
    CHECK_FALSE(slit_membership(s, {0.51, 0}, 1e-12));

    // F = -1: symmetric base.
    s = slit_set(0.3, -1.0, 1);
    CHECK(s.case_tag == "F=-1");
    CHECK(s.base_lo == -1.0);
    CHECK(s.base_hi == 1.0);

    // E = -1 with period 2: four slits of radius sqrt(1/2).
    s = slit_set(-1.0, 2.0, 2);
    CHECK(s.case_tag == "E=-1");
    const auto rays = s.rays();
    REQUIRE(rays.size() == 4);
    for (const auto& ray : rays) {
        CHECK(ray.t0 == 0.0);
        CHECK(ray.t1 == doctest::Approx(std::sqrt(0.5)));
    }
    CHECK(slit_membership(s, std::polar(0.5, M_PI / 2), 1e-12));

    CHECK_THROWS_AS(slit_set(0.5, 2.0, 1), NotNeutral);
}

TEST_CASE("membership and distance queries") {
    SlitSet s = slit_set(0.5, 1.0, 1);  // segment [0, 1]
    CHECK(slit_membership(s, {0.5, 0}, 1e-12));
    CHECK(slit_distance(s, {0.5, 0}) == 0.0);
    CHECK(slit_distance(s, {0.5, 0.3}) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(slit_distance(s, {-0.2, 0}) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(slit_distance(s, {1.4, 0.3}) ==
          doctest::Approx(std::hypot(0.4, 0.3)).epsilon(1e-12));

    // Period-2 set with base [0,1]: the even power admits negative reals.
    SlitSet p2 = slit_set(0.5, 1.0, 2);
    CHECK(slit_membership(p2, {-0.7, 0}, 1e-12));
    CHECK(slit_distance(p2, {-0.7, 0}) <= 1e-15);
}

TEST_CASE("closure under multiplication by roots of unity") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> un(0.0, 1.0);
    const std::vector<SlitSet> slits = {slit_set(0.5, 1.0, 1), slit_set(-0.5, 1.0, 3),
                                        slit_set(-1.0, 2.0, 2), slit_set(1.0, -2.0, 4)};
    int samples = 0;
    while (samples < 1000) {
        for (const auto& s : slits) {
            const auto rays = s.rays();
            const auto& ray = rays[rng() % rays.size()];
            const double t = ray.t0 + (ray.t1 - ray.t0) * un(rng);
            const Complex z = std::polar(t, ray.angle);
            const int k = static_cast<int>(rng() % s.period);
            const Complex omega = std::polar(1.0, 2 * M_PI * k / s.period);
            CHECK(slit_membership(s, omega * z, 1e-9));
            CHECK(slit_distance(s, omega * z) < 1e-12);
            ++samples;
        }
    }
}

TEST_CASE("distance to a rotated slit is realized on the nearest ray") {
    SlitSet s = slit_set(-1.0, 2.0, 2);  // four rays, radius sqrt(0.5)
    const double r = std::sqrt(0.5);
    // A point beyond the tip of the positive real ray.
    CHECK(slit_distance(s, {r + 0.25, 0}) == doctest::Approx(0.25).epsilon(1e-12));
    // A point bisecting two rays at small radius touches the origin region.
    const Complex diag = std::polar(0.1, M_PI / 4);
    CHECK(slit_distance(s, diag) ==
          doctest::Approx(0.1 * std::sin(M_PI / 4)).epsilon(1e-12));
}

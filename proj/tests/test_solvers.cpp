#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "detzeta/solve.hpp"

using namespace detzeta;

TEST_CASE("newton on a linear function") {
    auto res = newton_solve_1d([](Complex z) { return 2.0 * z - 1.0; },
                               [](Complex) { return Complex(2, 0); }, {0, 0});
    CHECK(std::abs(res.root - Complex(0.5, 0)) < 1e-14);
}

TEST_CASE("newton against the quadratic formula") {
    // z - z^2 = 0.21; the quadratic formula gives z = (1 - sqrt(1 - 0.84))/2 = 0.3.
    const double expected = (1.0 - std::sqrt(1.0 - 4 * 0.21)) / 2.0;
    auto res = newton_solve_1d([](Complex z) { return z - z * z - 0.21; },
                               [](Complex z) { return 1.0 - 2.0 * z; }, {0.2, 0});
    CHECK(std::abs(res.root - Complex(expected, 0)) < 1e-12);
    CHECK(expected == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("newton refuses nearly degenerate roots") {
    SolveOptions opts;
    opts.tol = 1e-14;
    // Seed inside the derivative floor: refused outright.
    CHECK_THROWS_AS(newton_solve_1d([](Complex z) { return z * z; },
                                    [](Complex z) { return 2.0 * z; },
                                    {1e-15, 0}, opts),
                    DerivativeVanished);
    // Unreachable residual target near a stationary point: gives up.
    CHECK_THROWS_AS(newton_solve_1d([](Complex z) { return z * z + 1e-12; },
                                    [](Complex z) { return 2.0 * z; },
                                    {0.5, 0}, opts),
                    Error);  // DerivativeVanished or NoConvergence
}

TEST_CASE("fixed point of a linear contraction") {
    auto res = contraction_fixed_point(
        [](const Complex2& p) -> Complex2 {
            return {p.first * 0.5, p.second * 0.5 + 0.5};
        },
        {{1, 0}, {0, 0}});
    CHECK(std::abs(res.point.first) < 1e-11);
    CHECK(std::abs(res.point.second - Complex(1, 0)) < 1e-11);
    CHECK(res.ratio == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("fixed point iteration count matches the contraction rate") {
    // A ratio-rho contraction needs about log(1/tol)/log(1/rho) steps.
    for (double rho : {0.3, 0.5, 0.8}) {
        SolveOptions opts;
        opts.tol = 1e-12;
        opts.max_iter = 500;
        auto res = contraction_fixed_point(
            [rho](const Complex2& p) -> Complex2 {
                return {p.first * rho + (1 - rho), p.second * rho};
            },
            {{0, 0}, {1, 0}}, opts);
        const double ideal = std::log(1.0 / opts.tol) / std::log(1.0 / rho);
        CHECK(res.iterations <= 2 * ideal + 4);
        CHECK(res.ratio == doctest::Approx(rho).epsilon(1e-3));
    }
}

TEST_CASE("expanding maps are rejected") {
    SolveOptions opts;
    opts.max_iter = 200;
    CHECK_THROWS_AS(contraction_fixed_point(
                        [](const Complex2& p) -> Complex2 {
                            return {2.0 * p.first + 1.0, 2.0 * p.second + 1.0};
                        },
                        {{1, 0}, {1, 0}}, opts),
                    RatioAboveOne);
}

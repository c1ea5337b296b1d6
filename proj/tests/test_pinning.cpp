#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "detzeta/examples.hpp"
#include "detzeta/pinning.hpp"
#include "detzeta/solve.hpp"
#include "detzeta/words.hpp"

using namespace detzeta;

namespace {

// A saddle with a negative expanding multiplier, for the sign bookkeeping.
SymbolicModel negative_sign_saddle() {
    SymbolSet symbols{{}, {0}};
    TransitionMatrix t(std::vector<std::vector<int>>{{1}});
    std::map<std::pair<int, int>, BlockMap> blocks;
    blocks.emplace(std::make_pair(0, 0),
                   BlockMap::hyperbolic(
                       series_from_monomials({{1, 0, 0.5}}, 0, 0, 4, 4),
                       series_from_monomials({{0, 1, -2.0}}, 0, 0, 4, 4), 0.2));
    return SymbolicModel(symbols, t,
                         {DomainPair{Disc{{0, 0}, 1.0}, Disc{{0, 0}, 1.0}}},
                         std::move(blocks),
                         {ContourSpec{Circle{{0, 0}, 1.0}, Circle{{0, 0}, 1.0}, 16}},
                         "negative-saddle");
}

// Literal one-symbol-at-a-time recursion: peel the last symbol, find the
// intermediate point as a fixed point of the two half-inverses, compose.
// Independent of the sweep engine; used as the oracle for short words.
Complex2 nested_pinning(const SymbolicModel& model, const Word& word, Complex w1,
                        Complex z2) {
    const std::size_t n = word.size() - 1;
    const PinningPair last = build_pinning_pair(model, {word[n - 1], word[n]});
    if (n == 1) return {last.phi_s(w1, z2), last.phi_u(w1, z2)};
    Word head(word.begin(), word.end() - 1);
    SolveOptions opts;
    opts.tol = 1e-14;
    opts.max_iter = 400;
    auto res = contraction_fixed_point(
        [&](const Complex2& xi) -> Complex2 {
            const Complex2 tail = nested_pinning(model, head, w1, xi.second);
            return {tail.second, last.phi_s(xi.first, z2)};
        },
        {model.domain_center1(word[n - 1]), model.domain_center2(word[n - 1])}, opts);
    const Complex2 tail = nested_pinning(model, head, w1, res.point.second);
    return {tail.first, last.phi_u(res.point.first, z2)};
}

}  // namespace

TEST_CASE("one-step pinning of the linear saddle") {
    SymbolicModel model = make_example("linear-saddle");
    PinningPair pair = build_pinning_pair(model, {0, 0});
    CHECK(pair.sign_s() == +1);
    CHECK(pair.phi_s({0.3, 0}, {0.8, 0}) == Complex(0.4, 0));
    CHECK(pair.phi_u({0.3, 0}, {0.8, 0}) == Complex(0.15, 0));
}

TEST_CASE("negative expanding multiplier flips the sign") {
    SymbolicModel model = negative_sign_saddle();
    PinningPair pair = build_pinning_pair(model, {0, 0});
    CHECK(pair.sign_s() == -1);
    CHECK(pair.phi_s({0.1, 0}, {0.6, 0}) == Complex(-0.3, 0));
}

TEST_CASE("parabolic self-edge pinning comes from the normal form") {
    SymbolicModel model = make_example("parabolic-Pa");
    PinningPair pair = build_pinning_pair(model, {0, 0});
    const Complex z2(0.2, 0);
    CHECK(std::abs(pair.phi_s({0.1, 0}, z2) - (z2 - z2 * z2)) < 1e-15);
    CHECK(std::abs(pair.phi_u({0.1, 0}, z2) - Complex(0.05, 0)) < 1e-15);
    CHECK(pair.sign_s() == +1);
}

TEST_CASE("iterated pinning of the linear saddle in closed form") {
    SymbolicModel model = make_example("linear-saddle");
    const auto res = iterate_pinning(model, {0, 0, 0}, {0.4, 0}, {0.8, 0});
    CHECK(std::abs(res.phi_s - Complex(0.2, 0)) < 1e-13);
    CHECK(std::abs(res.phi_u - Complex(0.1, 0)) < 1e-13);
    CHECK(res.ratio < 1.0);
}

TEST_CASE("identity residual on mixed parabolic words") {
    SymbolicModel model = make_example("parabolic-Pa");
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> un(0.15, 0.85);
    for (const Word& word : {Word{0, 0, 1}, Word{1, 0, 0, 1}, Word{0, 0, 0, 1}}) {
        const auto [lo1, hi1] = domain_real_interval(model.domains(word.front()).d1);
        const auto [lo2, hi2] = domain_real_interval(model.domains(word.back()).d2);
        for (int k = 0; k < 10; ++k) {
            const Complex w1(lo1 + (hi1 - lo1) * un(rng), 0);
            const Complex z2(lo2 + (hi2 - lo2) * un(rng), 0);
            CHECK(pinning_residual(model, word, w1, z2) < 1e-9);
        }
    }
}

TEST_CASE("all-S0 words are rejected") {
    SymbolicModel model = make_example("parabolic-Pa");
    CHECK_THROWS_AS(iterate_pinning(model, {0, 0}, {0.1, 0}, {0.1, 0}),
                    AdmissibilityError);
    CHECK_THROWS_AS(periodic_point(model, {0}), AdmissibilityError);
}

TEST_CASE("sweep agrees with the literal nested recursion") {
    for (const char* id : {"two-symbol-affine", "parabolic-Pa"}) {
        SymbolicModel model = make_example(id);
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> un(0.2, 0.8);
        for (int len = 2; len <= 4; ++len)
            for (const Word& word : admissible_words(model, len, true)) {
                const auto [lo1, hi1] = domain_real_interval(model.domains(word.front()).d1);
                const auto [lo2, hi2] = domain_real_interval(model.domains(word.back()).d2);
                const Complex w1(lo1 + (hi1 - lo1) * un(rng), 0);
                const Complex z2(lo2 + (hi2 - lo2) * un(rng), 0);
                const auto sweep = iterate_pinning(model, word, w1, z2);
                const auto nested = nested_pinning(model, word, w1, z2);
                CHECK(std::abs(sweep.phi_s - nested.first) < 1e-12);
                CHECK(std::abs(sweep.phi_u - nested.second) < 1e-12);
            }
    }
}

TEST_CASE("periodic points of the linear saddle in closed form") {
    SymbolicModel model = make_example("linear-saddle");
    const auto rec1 = periodic_point(model, {0});
    CHECK(std::abs(rec1.point.first) < 1e-12);
    CHECK(std::abs(rec1.point.second) < 1e-12);
    CHECK(rec1.lambda_E == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rec1.lambda_F == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(rec1.det_factor == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rec1.trace_term == doctest::Approx(2.0).epsilon(1e-14));

    const auto rec2 = periodic_point(model, {0, 0});
    CHECK(rec2.trace_term == doctest::Approx(4.0 / 9.0).epsilon(1e-14));

    for (int m = 1; m <= 20; ++m) {
        Word word(m, 0);
        const auto rec = periodic_point(model, word);
        const double p = std::pow(2.0, m);
        const double expected = 1.0 / ((1.0 - 1.0 / p) * (p - 1.0));
        CHECK(rec.trace_term == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("affine model periodic points match the linear-algebra oracle") {
    // For affine blocks (a + l w1, b + mu w2) the composition along a cycle is
    // affine, so the fixed point and the Jacobian are exactly solvable.
    SymbolicModel model = make_example("two-symbol-affine");
    auto coeff = [&](int i, int j) {
        const BlockMap& b = model.block(i, j);
        const double a = b.f1_series()->coeff(0, 0);
        const double l = b.f1_series()->coeff(1, 0);
        const double bb = b.f2_series()->coeff(0, 0);
        const double mu = b.f2_series()->coeff(0, 1);
        return std::array<double, 4>{a, l, bb, mu};
    };
    for (int m = 1; m <= 4; ++m)
        for (const Word& word : cyclic_words(model, m)) {
            double A = 1, B = 0, C = 1, D = 0;  // w1 -> A w1 + B, w2 -> C w2 + D
            for (std::size_t k = 0; k < word.size(); ++k) {
                const auto [a, l, bb, mu] = coeff(word[k], word[(k + 1) % word.size()]);
                A *= l;  B = l * B + a;
                C *= mu; D = mu * D + bb;
            }
            const double x1 = B / (1 - A), x2 = D / (1 - C);
            const double expected = 1.0 / std::abs((A - 1) * (C - 1));
            const auto rec = periodic_point(model, word);
            CHECK(std::abs(rec.point.first - Complex(x1, 0)) < 1e-11);
            CHECK(std::abs(rec.point.second - Complex(x2, 0)) < 1e-11);
            CHECK(rec.trace_term == doctest::Approx(expected).epsilon(1e-11));
            CHECK(rec.lambda_E == doctest::Approx(A).epsilon(1e-12));
            CHECK(rec.lambda_F == doctest::Approx(C).epsilon(1e-12));
        }
}

TEST_CASE("rotation invariance of cycles") {
    SymbolicModel model = make_example("two-symbol-affine");
    const Word base{0, 1, 1, 0, 1};
    const auto rec0 = periodic_point(model, base);
    for (std::size_t r = 1; r < base.size(); ++r) {
        Word rotated(base.begin() + r, base.end());
        rotated.insert(rotated.end(), base.begin(), base.begin() + r);
        const auto rec = periodic_point(model, rotated);
        CHECK(rec.trace_term ==
              doctest::Approx(rec0.trace_term).epsilon(1e-12));
        CHECK(rec.lambda_F == doctest::Approx(rec0.lambda_F).epsilon(1e-12));
    }
}

TEST_CASE("multiplier product equals the Jacobian determinant") {
    SymbolicModel model = make_example("parabolic-Pa");
    for (const Word& word : cyclic_words(model, 3)) {
        const auto rec = periodic_point(model, word);
        // Chain the determinants of the exact block Jacobians along the orbit.
        double det = 1.0;
        for (std::size_t k = 0; k < word.size(); ++k) {
            const auto J = model.block(word[k], word[(k + 1) % word.size()])
                               .jacobian(rec.orbit[k].first, rec.orbit[k].second);
            det *= (J[0] * J[3] - J[1] * J[2]).real();
        }
        CHECK(rec.lambda_E * rec.lambda_F ==
              doctest::Approx(det).epsilon(1e-10));
        // det(J - Id) = (lE - 1)(lF - 1) for the chained 2x2 Jacobian.
        CHECK(rec.det_factor ==
              doctest::Approx(std::abs((rec.lambda_E - 1) * (rec.lambda_F - 1)))
                  .epsilon(1e-10));
    }
}

TEST_CASE("hyperbolic periodic point of the mixed model is real and interior") {
    SymbolicModel model = make_example("parabolic-Pa");
    const auto rec = periodic_point(model, {0, 1});
    CHECK(std::abs(rec.point.first.imag()) < 1e-10);
    CHECK(std::abs(rec.point.second.imag()) < 1e-10);
    // The parabolic symbol's second coordinate lives in the petal.
    CHECK(std::get<Petal>(model.domains(0).d2).contains(rec.point.second));
}

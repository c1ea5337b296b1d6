#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "detzeta/examples.hpp"
#include "detzeta/operators.hpp"
#include "detzeta/words.hpp"

using namespace detzeta;

namespace {

SymbolicModel saddle_with_contours(double r1, double r2) {
    SymbolicModel base = make_example("linear-saddle");
    std::map<std::pair<int, int>, BlockMap> blocks;
    blocks.emplace(std::make_pair(0, 0), base.block(0, 0));
    return SymbolicModel(base.symbols(), base.transitions(), {base.domains(0)},
                         std::move(blocks),
                         {ContourSpec{Circle{{0, 0}, r1}, Circle{{0, 0}, r2}, 32}},
                         "saddle-custom-contours");
}

}  // namespace

TEST_CASE("contour placement checks") {
    SymbolicModel pa = make_example("parabolic-Pa");
    const auto check = validate_contour(pa, 0, 8);
    CHECK(check.enclosed);
    CHECK(check.clearance > 0.01);

    SymbolicModel pb = make_example("parabolic-Pb");
    const auto check_pb = validate_contour(pb, 0, 8);
    CHECK_FALSE(check_pb.enclosed);
    CHECK(check_pb.clearance > 0.05);

    // A petal contour that misses the incoming images entirely.
    SymbolicModel broken(pa.symbols(), pa.transitions(), {pa.domains(0), pa.domains(1)},
                         {{{0, 0}, pa.block(0, 0)},
                          {{0, 1}, pa.block(0, 1)},
                          {{1, 0}, pa.block(1, 0)},
                          {{1, 1}, pa.block(1, 1)}},
                         {ContourSpec{Circle{{0, 0}, 0.6}, Circle{{0.02, 0}, 0.01}, 16},
                          pa.contour(1)},
                         "pa-bad-contour");
    CHECK_THROWS_AS(validate_contour(broken, 0, 8), ContourViolation);
}

TEST_CASE("section trace of the linear saddle") {
    SymbolicModel model = make_example("linear-saddle");
    OperatorSection s = build_section(model, {0, 0});
    CHECK(std::abs(section_trace(s) - Complex(2, 0)) < 1e-10);
    CHECK(s.min_denominator > 0.1);
}

TEST_CASE("section action on a rational test function") {
    // For f = (w1/2, 2 w2) the operator maps psi(w1,w2) = 1/w1 to (1/2)/z1:
    // the residue evaluation of the double Cauchy kernel.
    SymbolicModel model = make_example("linear-saddle");
    OperatorSection s = build_section(model, {0, 0});
    const int n = static_cast<int>(s.source.nodes1.size());
    Eigen::VectorXcd psi(n * n);
    for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) psi[c * n + d] = 1.0 / s.source.nodes1[c];
    const Eigen::VectorXcd image = s.matrix * psi;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Complex expected = 0.5 / s.target.nodes1[a];
            CHECK(std::abs(image[a * n + b] - expected) < 1e-10);
        }
}

TEST_CASE("composition reproduces iterated traces") {
    SymbolicModel model = make_example("linear-saddle");
    OperatorSection s = build_section(model, {0, 0});
    OperatorSection s2 = compose_sections(s, s);
    CHECK(std::abs(section_trace(s2) - Complex(4.0 / 9.0, 0)) < 1e-9);

    OperatorSection small = build_section(model, {0, 0}, 16);
    CHECK_THROWS_AS(compose_sections(s, small), GeometryMismatch);
}

TEST_CASE("naturality for words of the affine full shift") {
    SymbolicModel model = make_example("two-symbol-affine");
    SectionCache cache(model, 32);
    for (int m = 1; m <= 3; ++m)
        for (const Word& cycle : cyclic_words(model, m)) {
            const Complex tr = cycle_section_trace(cache, cycle);
            const double expected = periodic_point(model, cycle).trace_term;
            CHECK(std::abs(tr - Complex(expected, 0)) < 1e-7);
            CHECK(std::abs(tr.imag()) < 1e-9);
        }
}

TEST_CASE("naturality across the parabolic symbol on non-self words") {
    SymbolicModel model = make_example("parabolic-Pa");
    SectionCache cache(model, 32);
    for (const Word& cycle : {Word{0, 1}, Word{1, 0}, Word{1, 1}, Word{0, 1, 1}}) {
        const Complex tr = cycle_section_trace(cache, cycle);
        const double expected = periodic_point(model, cycle).trace_term;
        CHECK(std::abs(tr - Complex(expected, 0)) < 1e-7);
    }
}

TEST_CASE("spectrum of the linear-saddle section is the power ladder") {
    // Monomial eigenfunctions z1^{-(p+1)} z2^q give eigenvalues 2^{-(p+q+1)}.
    SymbolicModel model = make_example("linear-saddle");
    OperatorSection s = build_section(model, {0, 0}, 24);
    const auto eigs = section_spectrum(s);
    CHECK(std::abs(eigs[0] - Complex(0.5, 0)) < 1e-10);
    CHECK(std::abs(eigs[1] - Complex(0.25, 0)) < 1e-9);
    CHECK(std::abs(eigs[2] - Complex(0.25, 0)) < 1e-9);
    CHECK(std::abs(eigs[3] - Complex(0.125, 0)) < 1e-8);

    // det(I - z section) vanishes at the eigenvalue reciprocals and is 1 at 0.
    CHECK(std::abs(section_fredholm_det(s, {0, 0}) - Complex(1, 0)) < 1e-14);
    for (int i = 0; i < 3; ++i) {
        const Complex z = 1.0 / eigs[i];
        CHECK(std::abs(section_fredholm_det(s, z)) < 1e-8);
    }
}

TEST_CASE("leading eigenvalue at the default node count") {
    SymbolicModel model = make_example("linear-saddle");
    OperatorSection s = build_section(model, {0, 0}, 32);
    const auto eigs = section_spectrum(s);
    CHECK(std::abs(eigs[0] - Complex(0.5, 0)) < 1e-8);
}

TEST_CASE("denominator collapse raises a contour violation") {
    // z1 nodes on the |z| = 0.5 circle collide with the phi_u image of the
    // unit w1 circle.
    SymbolicModel model = saddle_with_contours(0.5, 1.0);
    CHECK_THROWS_AS(build_section(model, {0, 0}), ContourViolation);
}

TEST_CASE("parabolic self sections") {
    // (P.a): the kernel form builds on the petal contour.
    SymbolicModel pa = make_example("parabolic-Pa");
    OperatorSection s = build_section(pa, {0, 0});
    CHECK(s.min_denominator > 1e-8);
    CHECK(std::isfinite(std::abs(section_trace(s))));

    // (P.b): the inverse branch pulls the nodes nearest the fixed point out
    // of the interpolation disc; the model-operator route is the supported
    // analysis for iterated parabolic blocks.
    SymbolicModel pb = make_example("parabolic-Pb");
    CHECK_THROWS_AS(build_section(pb, {0, 0}), ContourViolation);
}

TEST_CASE("full-section determinant matches the cycle expansion") {
    SymbolicModel model = make_example("two-symbol-affine");
    OperatorSection full = full_section(model, 20);
    const auto eigs = section_spectrum(full);
    DeterminantSeries series = determinant_series(model, 14, 4);
    const auto roots = polynomial_roots(series.coeffs);
    int compared = 0;
    for (const Complex eig : eigs) {
        if (std::abs(eig) < 0.5) break;  // zeros beyond |z| = 2
        const Complex zero = 1.0 / eig;
        double best = 1e300;
        for (Complex r : roots) best = std::min(best, std::abs(r - zero));
        CHECK(best < 1e-4);
        ++compared;
    }
    CHECK(compared >= 1);

    SymbolicModel pa = make_example("parabolic-Pa");
    CHECK_THROWS_AS(full_section(pa), DomainError);
}

TEST_CASE("fatou error series of the quadratic normal form is geometric") {
    BivariateSeries phi_s =
        series_from_monomials({{0, 1, 1.0}, {0, 2, -1.0}}, 0, 0, 2, 2);
    BivariateSeries e = fatou_error_series_pa(phi_s, 4, 12);
    for (int b = 0; b <= 10; ++b)
        CHECK(std::abs(e.coeff(0, b) - 1.0) < 1e-12);
    for (int a = 1; a <= 4; ++a)
        CHECK(e.max_abs_coeff_at_degree1(a) < 1e-12);
}

TEST_CASE("normal-form violations are flagged") {
    BivariateSeries wrong =
        series_from_monomials({{0, 1, 1.0}, {0, 2, -2.0}}, 0, 0, 2, 2);
    CHECK_THROWS_AS(fatou_error_series_pa(wrong, 4, 12), SingularityNotRemovable);
}

TEST_CASE("fatou error series of the inverse branch has Catalan coefficients") {
    // For phi_u = w1 - w1^2 the inverse branch is the Catalan generating
    // series and E(z1) = -(1 + 2 z1 + 5 z1^2 + 14 z1^3 + ...).
    BivariateSeries phi_u =
        series_from_monomials({{1, 0, 1.0}, {2, 0, -1.0}}, 0, 0, 2, 2);
    BivariateSeries e = fatou_error_series_pb(phi_u, 8, 4);
    const double catalan[] = {1, 2, 5, 14, 42, 132};
    for (int a = 0; a < 6; ++a)
        CHECK(e.coeff(a, 0) == doctest::Approx(-catalan[a]).epsilon(1e-11));
}

TEST_CASE("fatou residual on the shipped parabolic models") {
    for (const char* id : {"parabolic-Pa", "parabolic-Pb"}) {
        SymbolicModel model = make_example(id);
        FatouData data = fatou_conjugate(model, 0, 10, 24);
        CHECK(fatou_residual(model, data, 8) < 1e-9);
        CHECK(data.half_plane_R > 0.0);
    }
}

TEST_CASE("model operator spectra") {
    ModelOperator tp{ModelOperatorKind::Tplus, 0.0, {0.1, 1.0, 10.0}};
    const auto spec_t = model_operator_spectrum(tp);
    CHECK(spec_t.has_interval);
    CHECK(spec_t.interval_lo == 0.0);
    CHECK(spec_t.interval_hi == 1.0);
    REQUIRE(spec_t.points.size() == 3);
    CHECK(spec_t.points[0] == doctest::Approx(std::exp(-10.0)));
    CHECK(spec_t.points[2] == doctest::Approx(std::exp(-0.1)));
    for (double p : spec_t.points) {
        CHECK(p > 0.0);
        CHECK(p <= 1.0);
    }

    ModelOperator mu{ModelOperatorKind::Mu, 0.5, {}};
    const auto spec_mu = model_operator_spectrum(mu, 10);
    CHECK(spec_mu.points[0] == 1.0);
    CHECK(spec_mu.points[1] == 0.5);
    CHECK(spec_mu.points[2] == 0.25);

    ModelOperator ms{ModelOperatorKind::Ms, -0.4, {}};
    const auto spec_ms = model_operator_spectrum(ms, 10);
    CHECK(spec_ms.points[0] == doctest::Approx(0.4));   // -lambda
    CHECK(spec_ms.points[1] == doctest::Approx(-0.16)); // -lambda^2

    CHECK_THROWS_AS(model_operator_spectrum(ModelOperator{ModelOperatorKind::Mu, 1.5, {}}),
                    ParameterOutOfRange);
}

TEST_CASE("power traces match the eigenvalue sums") {
    for (double lambda : {0.5, -0.4, 0.25}) {
        ModelOperator mu{ModelOperatorKind::Mu, lambda, {}};
        ModelOperator ms{ModelOperatorKind::Ms, lambda, {}};
        for (int l = 1; l <= 10; ++l) {
            double sum_mu = 0.0, sum_ms = 0.0;
            for (int j = 0; j <= 400; ++j) sum_mu += std::pow(std::pow(lambda, j), l);
            const double sgn = lambda > 0 ? 1.0 : -1.0;
            for (int j = 1; j <= 400; ++j)
                sum_ms += std::pow(sgn * std::pow(lambda, j), l);
            CHECK(model_operator_power_trace(mu, l) ==
                  doctest::Approx(sum_mu).epsilon(1e-12));
            CHECK(model_operator_power_trace(ms, l) ==
                  doctest::Approx(sum_ms).epsilon(1e-12));
        }
    }
}

TEST_CASE("direct-product witnesses densify the predicted interval") {
    SymbolicModel model = make_example("parabolic-Pa");
    const auto pred = parabolic_spectrum_prediction(model)[0];
    const auto witnesses = direct_product_witnesses(pred, 200);
    CHECK(witnesses.front() >= pred.interval_lo - 1e-12);
    CHECK(witnesses.back() <= pred.interval_hi + 1e-12);
    CHECK(witnesses.back() > 0.99);
    double max_gap = witnesses.front() - pred.interval_lo;
    for (std::size_t i = 1; i < witnesses.size(); ++i)
        max_gap = std::max(max_gap, witnesses[i] - witnesses[i - 1]);
    max_gap = std::max(max_gap, pred.interval_hi - witnesses.back());
    CHECK(max_gap < 0.05);
}

TEST_CASE("scaling invariance of the discretized linear factor") {
    // The collocation matrix of psi -> contour integral of psi(w)/(z - l w)
    // is exactly invariant under scaling both contours.
    const int n = 24;
    const double lambda = 0.5;
    auto build = [&](double radius) {
        Circle c{{0, 0}, radius};
        Eigen::MatrixXcd m(n, n);
        for (int a = 0; a < n; ++a)
            for (int ccol = 0; ccol < n; ++ccol)
                m(a, ccol) = c.weight(ccol, n) / (c.node(a, n) - lambda * c.node(ccol, n));
        return m;
    };
    const Eigen::MatrixXcd m1 = build(1.0);
    const Eigen::MatrixXcd m2 = build(0.37);
    CHECK((m1 - m2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("deviation from the linear model") {
    SymbolicModel pa = make_example("parabolic-Pa");
    for (double eps : {1.0, 0.5, 0.25})
        CHECK(parabolic_deviation(pa, 0, eps) < 1e-14);

    SymbolicModel quad = make_example("parabolic-Pa-quadratic");
    for (double eps : {0.4, 0.2, 0.1})
        CHECK(parabolic_deviation(quad, 0, eps) ==
              doctest::Approx(0.1 * eps).epsilon(1e-10));
    const double d1 = parabolic_deviation(quad, 0, 0.3);
    const double d2 = parabolic_deviation(quad, 0, 0.15);
    CHECK(d2 / d1 == doctest::Approx(0.5).epsilon(1e-10));

    SymbolicModel pb = make_example("parabolic-Pb");
    // phi_s = z2/2 exactly and phi_u carries the quadratic term only through
    // the first coordinate, so the (P.b) deviation vanishes identically.
    for (double eps : {1.0, 0.5})
        CHECK(parabolic_deviation(pb, 0, eps) < 1e-14);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "detzeta/examples.hpp"
#include "detzeta/model_io.hpp"
#include "detzeta/validate.hpp"

using namespace detzeta;

TEST_CASE("linear saddle validates with contraction margin 1/2") {
    SymbolicModel model = make_example("linear-saddle");
    ValidationReport report = validate_model(model, 32);
    CHECK(report.ok);
    REQUIRE(report.edges.size() == 1);
    CHECK(report.edges[0].contraction_margin == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(report.edges[0].min_abs_det > 0.9);
}

TEST_CASE("violated contraction is reported with a witness") {
    SymbolicModel model = make_example("broken-inclusion");
    CHECK_THROWS_WITH_AS(validate_model(model, 32),
                         doctest::Contains("contraction inclusion fails"),
                         GeometryError);
}

TEST_CASE("reducible transition matrix is structural") {
    CHECK_THROWS_AS(make_example("broken-reducible"), StructuralError);
}

TEST_CASE("parabolic examples validate") {
    for (const char* id : {"parabolic-Pa", "parabolic-Pb", "parabolic-Pa-quadratic"}) {
        SymbolicModel model = make_example(id);
        ValidationReport report = validate_model(model, 24);
        CHECK(report.ok);
    }
}

TEST_CASE("all shipped examples validate") {
    for (const auto& id : example_ids()) {
        if (id.rfind("broken", 0) == 0) continue;
        CHECK(validate_model(make_example(id), 24).ok);
    }
}

TEST_CASE("petal membership") {
    Petal p{1, 1.7, 0.3, 2.0, 0.45, 2};
    CHECK(p.contains(Complex(0.1, 0.05)));
    CHECK_FALSE(p.contains(Complex(0, 0)));           // origin excluded
    CHECK_FALSE(p.contains(Complex(-0.1, 0.0)));      // outside the sector
    CHECK_FALSE(p.contains(Complex(0.35, 0.0)));      // beyond the radius
    CHECK(p.contains_tilde(Complex(0, 0)));           // images may hit the fixed point

    // Symmetry about the real axis.
    for (double x : {0.05, 0.12, 0.2})
        for (double y : {0.01, 0.07, 0.15}) {
            CHECK(p.contains(Complex(x, y)) == p.contains(Complex(x, -y)));
        }
}

TEST_CASE("petal parameter constraints") {
    Petal bad{1, 1.2, 0.3, 2.0, 0.45, 2};  // theta below pi/2
    CHECK_THROWS_AS(bad.check(), StructuralError);
    Petal bad2{1, 1.7, 0.5, 2.0, 0.45, 2};  // r >= r~
    CHECK_THROWS_AS(bad2.check(), StructuralError);
}

TEST_CASE("model JSON round trip") {
    for (const char* id : {"two-symbol-affine", "parabolic-Pa", "parabolic-Pb"}) {
        SymbolicModel model = make_example(id);
        const std::string text = model_to_json_text(model);
        SymbolicModel reloaded = model_from_json_text(text);
        CHECK(reloaded.num_symbols() == model.num_symbols());
        CHECK(model_to_json_text(reloaded) == text);
        // Identical block behaviour at a sample point.
        for (const auto& [i, j] : model.edges()) {
            const Complex2 x{Complex(0.11, 0.02), Complex(-0.07, 0.01)};
            const auto a = model.block(i, j).map_point(x);
            const auto b = reloaded.block(i, j).map_point(x);
            CHECK(std::abs(a.first - b.first) == 0.0);
            CHECK(std::abs(a.second - b.second) == 0.0);
        }
    }
}

TEST_CASE("malformed JSON raises a parse error") {
    CHECK_THROWS_AS(model_from_json_text("{ not json"), ParseError);
    CHECK_THROWS_AS(model_from_json_text("{\"symbols\": {}}"), ParseError);
}

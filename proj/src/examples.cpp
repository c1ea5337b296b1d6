#include "detzeta/examples.hpp"

namespace detzeta {

namespace {

BivariateSeries affine1(double a, double lambda, double r = 4.0) {
    // a + lambda * w1
    return series_from_monomials({{0, 0, a}, {1, 0, lambda}}, 0, 0, r, r);
}

BivariateSeries affine2(double b, double mu, double r = 4.0) {
    // b + mu * w2
    return series_from_monomials({{0, 0, b}, {0, 1, mu}}, 0, 0, r, r);
}

DomainPair unit_discs() { return {Disc{{0, 0}, 1.0}, Disc{{0, 0}, 1.0}}; }

ContourSpec disc_contours(double r1, double r2, int nodes = 32) {
    return {Circle{{0, 0}, r1}, Circle{{0, 0}, r2}, nodes};
}

SymbolicModel linear_saddle(double contraction) {
    SymbolSet symbols{{}, {0}};
    TransitionMatrix t(std::vector<std::vector<int>>{{1}});
    std::map<std::pair<int, int>, BlockMap> blocks;
    blocks.emplace(std::make_pair(0, 0),
                   BlockMap::hyperbolic(affine1(0.0, contraction), affine2(0.0, 2.0), 0.25));
    return SymbolicModel(symbols, t, {unit_discs()}, std::move(blocks),
                         {disc_contours(1.0, 1.0)},
                         contraction < 1.0 ? "linear-saddle" : "broken-inclusion");
}

SymbolicModel two_symbol_affine() {
    SymbolSet symbols{{}, {0, 1}};
    TransitionMatrix t({{1, 1}, {1, 1}});
    std::map<std::pair<int, int>, BlockMap> blocks;
    blocks.emplace(std::make_pair(0, 0),
                   BlockMap::hyperbolic(affine1(0.10, 0.40), affine2(0.30, 3.0), 0.2));
    blocks.emplace(std::make_pair(0, 1),
                   BlockMap::hyperbolic(affine1(0.25, 0.30), affine2(-0.20, 2.5), 0.2));
    blocks.emplace(std::make_pair(1, 0),
                   BlockMap::hyperbolic(affine1(-0.25, 0.35), affine2(0.20, 2.8), 0.2));
    blocks.emplace(std::make_pair(1, 1),
                   BlockMap::hyperbolic(affine1(-0.10, 0.45), affine2(-0.30, 3.2), 0.2));
    return SymbolicModel(symbols, t, {unit_discs(), unit_discs()}, std::move(blocks),
                         {disc_contours(1, 1), disc_contours(1, 1)}, "two-symbol-affine");
}

SymbolicModel bipartite_affine() {
    SymbolSet symbols{{}, {0, 1}};
    TransitionMatrix t({{0, 1}, {1, 0}});
    std::map<std::pair<int, int>, BlockMap> blocks;
    blocks.emplace(std::make_pair(0, 1),
                   BlockMap::hyperbolic(affine1(0.25, 0.30), affine2(-0.20, 2.5), 0.2));
    blocks.emplace(std::make_pair(1, 0),
                   BlockMap::hyperbolic(affine1(-0.25, 0.35), affine2(0.20, 2.8), 0.2));
    return SymbolicModel(symbols, t, {unit_discs(), unit_discs()}, std::move(blocks),
                         {disc_contours(1, 1), disc_contours(1, 1)}, "bipartite-affine");
}

// Shared hyperbolic symbol for the parabolic examples; the cross terms make
// the Jacobians non-diagonal.
BlockMap hh_block() {
    BivariateSeries f1 = series_from_monomials({{0, 0, 0.30}, {1, 0, 0.50}, {1, 1, 0.05}},
                                               0, 0, 4, 4);
    BivariateSeries f2 = series_from_monomials({{0, 0, -0.40}, {0, 1, 3.0}, {1, 0, 0.10}},
                                               0, 0, 4, 4);
    return BlockMap::hyperbolic(std::move(f1), std::move(f2), 0.2);
}

Petal standard_petal(int orientation) {
    return Petal{1, 1.7, 0.3, 2.0, 0.45, orientation};
}

SymbolicModel parabolic_pa(bool quadratic) {
    // Symbol 0 is parabolic of type (P.a): phi_s(w1, z2) = z2 - z2^2.
    SymbolSet symbols{{0}, {1}};
    TransitionMatrix t({{1, 1}, {1, 1}});
    const double d1p_radius = quadratic ? 1.0 : 0.6;

    std::map<std::pair<int, int>, BlockMap> blocks;
    BivariateSeries f1_pp =
        quadratic ? series_from_monomials({{1, 0, 0.5}, {2, 0, 0.1}}, 0, 0, 4, 4)
                  : series_from_monomials({{1, 0, 0.5}}, 0, 0, 4, 4);
    blocks.emplace(std::make_pair(0, 0),
                   BlockMap::parabolic_pa(std::move(f1_pp), 1,
                                          BivariateSeries::zero(0, 0, 4, 4), 0.1));
    blocks.emplace(std::make_pair(0, 1),
                   BlockMap::hyperbolic(affine1(0.20, 0.50), affine2(-3.0, 20.0), 0.15));
    blocks.emplace(std::make_pair(1, 0),
                   BlockMap::hyperbolic(affine1(-0.10, 1.0 / 3.0), affine2(0.20, 2.5), 0.15));
    blocks.emplace(std::make_pair(1, 1), hh_block());

    std::vector<DomainPair> domains = {
        {Disc{{0, 0}, d1p_radius}, standard_petal(2)},
        unit_discs(),
    };
    // Gamma^2 for the parabolic symbol encloses the image of the outgoing
    // partial inverses (a disc around 0.15 of radius 0.05) inside the petal.
    std::vector<ContourSpec> contours = {
        {Circle{{0, 0}, d1p_radius}, Circle{{0.15, 0.0}, 0.1}, 32},
        disc_contours(1, 1),
    };
    return SymbolicModel(symbols, t, std::move(domains), std::move(blocks),
                         std::move(contours),
                         quadratic ? "parabolic-Pa-quadratic" : "parabolic-Pa");
}

SymbolicModel parabolic_pb() {
    // Symbol 0 is parabolic of type (P.b): phi_u(w1, z2) = w1 - w1^2 and the
    // expanding component is f^2 = 2 w2.
    SymbolSet symbols{{0}, {1}};
    TransitionMatrix t({{1, 1}, {1, 1}});

    std::map<std::pair<int, int>, BlockMap> blocks;
    blocks.emplace(std::make_pair(0, 0),
                   BlockMap::parabolic_pb(affine2(0.0, 2.0), 1,
                                          BivariateSeries::zero(0, 0, 4, 4), 0.1));
    blocks.emplace(std::make_pair(0, 1),
                   BlockMap::hyperbolic(affine1(0.20, 0.50), affine2(0.20, 2.5), 0.15));
    blocks.emplace(std::make_pair(1, 0),
                   BlockMap::hyperbolic(affine1(0.15, 0.05), affine2(-1.0, 20.0), 0.15));
    blocks.emplace(std::make_pair(1, 1), hh_block());

    std::vector<DomainPair> domains = {
        {standard_petal(1), Disc{{0, 0}, 0.6}},
        unit_discs(),
    };
    // Gamma^1 sits in the attracting petal on the negative real side, away
    // from the incoming pinning images around +0.15.
    std::vector<ContourSpec> contours = {
        {Circle{{-0.15, 0.0}, 0.1}, Circle{{0, 0}, 0.6}, 32},
        disc_contours(1, 1),
    };
    return SymbolicModel(symbols, t, std::move(domains), std::move(blocks),
                         std::move(contours), "parabolic-Pb");
}

SymbolicModel broken_reducible() {
    SymbolSet symbols{{}, {0, 1}};
    TransitionMatrix t({{1, 0}, {0, 1}});
    std::map<std::pair<int, int>, BlockMap> blocks;
    blocks.emplace(std::make_pair(0, 0),
                   BlockMap::hyperbolic(affine1(0.0, 0.5), affine2(0.0, 2.0), 0.2));
    blocks.emplace(std::make_pair(1, 1),
                   BlockMap::hyperbolic(affine1(0.0, 0.5), affine2(0.0, 2.0), 0.2));
    return SymbolicModel(symbols, t, {unit_discs(), unit_discs()}, std::move(blocks),
                         {disc_contours(1, 1), disc_contours(1, 1)}, "broken-reducible");
}

}  // namespace

SymbolicModel make_example(const std::string& id) {
    if (id == "linear-saddle") return linear_saddle(0.5);
    if (id == "broken-inclusion") return linear_saddle(1.5);
    if (id == "two-symbol-affine") return two_symbol_affine();
    if (id == "bipartite-affine") return bipartite_affine();
    if (id == "parabolic-Pa") return parabolic_pa(false);
    if (id == "parabolic-Pa-quadratic") return parabolic_pa(true);
    if (id == "parabolic-Pb") return parabolic_pb();
    if (id == "broken-reducible") return broken_reducible();
    throw ParseError("unknown example id '" + id + "'");
}

std::vector<std::string> example_ids() {
    return {"linear-saddle",       "two-symbol-affine", "bipartite-affine",
            "parabolic-Pa",        "parabolic-Pa-quadratic", "parabolic-Pb",
            "broken-inclusion",    "broken-reducible"};
}

}  // namespace detzeta

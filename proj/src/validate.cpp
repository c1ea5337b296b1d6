#include "detzeta/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace detzeta {

namespace {

// Boundary samples of the extension-enlarged domain (Def. of the model keeps
// a scalar margin per block instead of explicit enlarged sets).
std::vector<Complex> extended_boundary_samples(const Domain& d, double margin,
                                               int count) {
    if (std::holds_alternative<Disc>(d)) {
        const auto& disc = std::get<Disc>(d);
        Disc enlarged{disc.center, disc.radius + margin};
        return domain_boundary_samples(Domain{enlarged}, count);
    }
    const auto& p = std::get<Petal>(d);
    Petal outer = p;
    outer.theta = p.theta_tilde;
    outer.r = p.r_tilde;
    return domain_boundary_samples(Domain{outer}, count);
}

std::string edge_str(int i, int j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

ValidationReport validate_model(const SymbolicModel& model, int grid_density) {
    if (grid_density < 8) throw DomainError("grid_density must be >= 8");
    ValidationReport report;
    report.model_name = model.name();
    report.transitions_irreducible = model.transitions().irreducible();
    if (!report.transitions_irreducible)
        throw StructuralError("transition matrix is reducible");

    const int boundary_n = grid_density;
    const int interior_n = std::max(4, grid_density / 4);
    const SolveOptions solve_opts{1e-12, 80, 1.0};

    for (const auto& [i, j] : model.edges()) {
        const BlockMap& block = model.block(i, j);
        const auto& src = model.domains(i);
        const auto& dst = model.domains(j);
        EdgeReport er;
        er.edge = {i, j};
        er.contraction_margin = 1e100;
        er.phi_s_margin = 1e100;
        er.min_abs_det = 1e100;

        // (a) contraction of the first component: images of D^1_i x D^2_i land
        // strictly inside the target first domain; the enlarged source must
        // still map inside (with any positive margin).
        auto check_contraction = [&](const std::vector<Complex>& w1s,
                                     const std::vector<Complex>& w2s, bool record) {
            for (Complex w1 : w1s)
                for (Complex w2 : w2s) {
                    const Complex image = block.eval_f1(w1, w2);
                    if (!domain_contains_image(dst.d1, image))
                        throw GeometryError("contraction inclusion fails on edge " +
                                            edge_str(i, j) + " at w1=" + format_point(w1) +
                                            ", w2=" + format_point(w2) + " (image " +
                                            format_point(image) + ")");
                    if (record)
                        er.contraction_margin =
                            std::min(er.contraction_margin, domain_margin(dst.d1, image));
                    ++er.samples;
                }
        };
        const auto b1 = domain_boundary_samples(src.d1, boundary_n);
        const auto b2 = domain_boundary_samples(src.d2, boundary_n);
        const auto i1 = domain_interior_samples(src.d1, interior_n);
        const auto i2 = domain_interior_samples(src.d2, interior_n);
        // A (P.b) self-edge carries no first-coordinate contraction; its
        // petal condition on phi_u is checked below instead.
        if (block.kind() != BlockKind::ParabolicPb) {
            check_contraction(b1, b2, true);
            check_contraction(i1, i2, true);
            check_contraction(extended_boundary_samples(src.d1, block.extension_margin(),
                                                        boundary_n / 2),
                              extended_boundary_samples(src.d2, block.extension_margin(),
                                                        boundary_n / 2),
                              false);
        } else {
            er.contraction_margin = 0.0;
        }

        // (b) partial inverse: solvable with image strictly interior to D^2_i.
        const Complex seed_center = model.domain_center2(i);
        const auto z2s = domain_boundary_samples(dst.d2, boundary_n);
        const auto z2i = domain_interior_samples(dst.d2, interior_n);
        auto check_solve = [&](const std::vector<Complex>& w1s,
                               const std::vector<Complex>& z2list) {
            for (Complex w1 : w1s)
                for (Complex z2 : z2list) {
                    const Complex w2 = block.phi_s(w1, z2, seed_center, solve_opts);
                    if (!domain_contains_image(src.d2, w2))
                        throw GeometryError("partial inverse leaves the source domain on edge " +
                                            edge_str(i, j) + " at w1=" + format_point(w1) +
                                            ", z2=" + format_point(z2) + " (inverse " +
                                            format_point(w2) + ")");
                    er.phi_s_margin = std::min(er.phi_s_margin, domain_margin(src.d2, w2));
                }
        };
        check_solve(b1, z2s);
        check_solve(i1, z2i);

        // For a (P.b) self-edge the petal condition lives on phi_u instead.
        if (block.kind() == BlockKind::ParabolicPb) {
            for (Complex w1 : i1)
                for (Complex z2 : z2i) {
                    const Complex image = block.phi_u(w1, z2, seed_center, solve_opts);
                    if (!domain_contains_image(src.d1, image))
                        throw GeometryError("repelling-petal image escapes on edge " +
                                            edge_str(i, j) + " at w1=" + format_point(w1) +
                                            " (image " + format_point(image) + ")");
                }
        }

        // (c) invertibility on the real rectangle I^1_i x phi_s(I^1_i x I^2_j).
        const auto [lo1, hi1] = domain_real_interval(src.d1);
        const auto [lo2, hi2] = domain_real_interval(dst.d2);
        const int nreal = interior_n * interior_n;
        for (int a = 0; a < interior_n; ++a)
            for (int b = 0; b < interior_n; ++b) {
                const double pad1 = 1e-3 * (hi1 - lo1), pad2 = 1e-3 * (hi2 - lo2);
                const Complex w1(lo1 + pad1 + (hi1 - lo1 - 2 * pad1) * (a + 0.5) / interior_n,
                                 0.0);
                const Complex z2(lo2 + pad2 + (hi2 - lo2 - 2 * pad2) * (b + 0.5) / interior_n,
                                 0.0);
                const Complex w2 = block.phi_s(w1, z2, seed_center, solve_opts);
                const auto J = block.jacobian(w1, w2);
                const double det = std::abs(J[0] * J[3] - J[1] * J[2]);
                if (det < 1e-10)
                    throw GeometryError("Jacobian determinant vanishes on edge " +
                                        edge_str(i, j) + " at w1=" + format_point(w1) +
                                        ", w2=" + format_point(w2));
                er.min_abs_det = std::min(er.min_abs_det, det);
            }
        (void)nreal;
        report.edges.push_back(er);
    }
    report.ok = true;
    return report;
}

std::string ValidationReport::to_json_text() const {
    nlohmann::json j;
    j["ok"] = ok;
    j["model"] = model_name;
    j["transitions_irreducible"] = transitions_irreducible;
    nlohmann::json edges_json = nlohmann::json::array();
    for (const auto& e : edges)
        edges_json.push_back(nlohmann::json{{"edge", {e.edge.first, e.edge.second}},
                                            {"contraction_margin", e.contraction_margin},
                                            {"phi_s_margin", e.phi_s_margin},
                                            {"min_abs_det", e.min_abs_det},
                                            {"samples", e.samples}});
    j["edges"] = edges_json;
    return j.dump(2);
}

}  // namespace detzeta

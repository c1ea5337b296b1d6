#include "detzeta/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <json.hpp>

#include "detzeta/determinant.hpp"
#include "detzeta/examples.hpp"
#include "detzeta/model_io.hpp"
#include "detzeta/operators.hpp"
#include "detzeta/validate.hpp"
#include "detzeta/words.hpp"

namespace detzeta {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

SymbolicModel config_model(const RunConfig& config) {
    if (!config.example_id.empty()) return make_example(config.example_id);
    if (!config.model_path.empty()) return load_model(config.model_path);
    throw ParseError("no model given: pass --model <path> or --example <id>");
}

namespace {

std::ofstream open_out(const RunConfig& config, const std::string& name) {
    fs::create_directories(config.out_dir);
    std::ofstream out(fs::path(config.out_dir) / name, std::ios::binary);
    if (!out) throw ParseError("cannot write to output directory " + config.out_dir);
    return out;
}

// Returns 1 for model/validation failures, 2 for configuration failures.
int guard(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}

json slit_to_json(const SlitSet& slit) {
    return json{{"P", slit.period},
                {"case", slit.case_tag},
                {"interval", {slit.base_lo, slit.base_hi}},
                {"scale", slit.scale}};
}

void write_slit_points(std::ofstream& csv, const SlitSet& slit, int slit_index,
                       int points_per_ray) {
    for (const auto& ray : slit.rays())
        for (int i = 0; i < points_per_ray; ++i) {
            const double t = ray.t0 + (ray.t1 - ray.t0) * i / (points_per_ray - 1.0);
            const Complex z = std::polar(t, ray.angle);
            csv << slit_index << "," << format_sci(z.real()) << ","
                << format_sci(z.imag()) << "\n";
        }
}

// Multipliers of the neutral fixed point carried by a parabolic symbol:
// (P.a) has lambda_F = +1 and lambda_E = lambda_u; (P.b) has lambda_E = +1
// and lambda_F = 1/lambda_s.
std::pair<double, double> neutral_multipliers(const ParabolicPrediction& p) {
    if (p.kind == BlockKind::ParabolicPa) return {p.lambda, 1.0};
    return {1.0, 1.0 / p.lambda};
}

}  // namespace

int cmd_validate(const RunConfig& config) {
    return guard([&]() -> int {
        SymbolicModel model = config_model(config);
        try {
            ValidationReport report = validate_model(model, config.grid_density);
            auto out = open_out(config, "validation.json");
            out << report.to_json_text() << "\n";
            std::cout << "validate " << model.name() << ": OK ("
                      << report.edges.size() << " edges)\n";
            return 0;
        } catch (const Error& e) {
            auto out = open_out(config, "validation.json");
            json j{{"ok", false}, {"model", model.name()}, {"error", e.what()}};
            out << j.dump(2) << "\n";
            std::cerr << "validate " << model.name() << ": " << e.what() << "\n";
            return 1;
        }
    });
}

int cmd_determinant(const RunConfig& config) {
    return guard([&]() -> int {
        SymbolicModel model = config_model(config);
        validate_model(model, config.grid_density);
        DeterminantSeries series = determinant_series(model, config.order, config.jobs);

        auto traces = open_out(config, "traces.csv");
        traces << "m,d_m\n";
        for (int m = 1; m <= series.order; ++m)
            traces << m << "," << format_sci(series.traces[m - 1]) << "\n";

        auto coeffs = open_out(config, "coefficients.csv");
        coeffs << "n,c_n\n";
        for (int n = 0; n <= series.order; ++n)
            coeffs << n << "," << format_sci(series.coeffs[n]) << "\n";

        const auto roots = polynomial_roots(series.coeffs);
        Complex smallest(0, 0);
        double best = std::numeric_limits<double>::infinity();
        for (Complex r : roots)
            if (std::abs(r) < best) {
                best = std::abs(r);
                smallest = r;
            }
        json summary;
        summary["model"] = model.name();
        summary["order"] = series.order;
        summary["smallest_zero"] = {{"re", smallest.real()},
                                    {"im", smallest.imag()},
                                    {"modulus", best}};
        summary["tail"] = {{"last_trace", series.traces.back()},
                           {"last_coefficient", series.coeffs.back()}};
        auto out = open_out(config, "determinant_summary.json");
        out << summary.dump(2) << "\n";
        std::cout << "determinant " << model.name() << ": M=" << series.order
                  << " smallest zero modulus " << best << "\n";
        return 0;
    });
}

int cmd_slits(const RunConfig& config) {
    return guard([&]() -> int {
        std::vector<SlitSet> slits;
        if (config.has_multipliers) {
            slits.push_back(slit_set(config.lambda_E, config.lambda_F, config.period));
        } else {
            SymbolicModel model = config_model(config);
            for (const auto& p : parabolic_spectrum_prediction(model)) {
                const auto [le, lf] = neutral_multipliers(p);
                slits.push_back(slit_set(le, lf, 1));
            }
        }
        json descriptors = json::array();
        for (const auto& s : slits) descriptors.push_back(slit_to_json(s));
        auto out = open_out(config, "slits.json");
        out << descriptors.dump(2) << "\n";
        auto csv = open_out(config, "slit_points.csv");
        csv << "slit,re,im\n";
        for (std::size_t i = 0; i < slits.size(); ++i)
            write_slit_points(csv, slits[i], static_cast<int>(i), 100);
        std::cout << "slits: " << slits.size() << " descriptor(s)\n";
        return 0;
    });
}

int cmd_spectrum(const RunConfig& config) {
    return guard([&]() -> int {
        SymbolicModel model = config_model(config);
        validate_model(model, config.grid_density);

        auto eigs_csv = open_out(config, "spectrum_eigs.csv");
        eigs_csv << "edge,index,re,im,modulus\n";
        for (int k = 0; k < model.num_symbols(); ++k) {
            if (!model.has_edge(k, k) || model.is_parabolic(k)) continue;
            OperatorSection section = build_section(model, {k, k}, config.nodes);
            const auto eigs = section_spectrum(section);
            const int keep = std::min<std::size_t>(eigs.size(), 64);
            for (int i = 0; i < keep; ++i)
                eigs_csv << k << "-" << k << "," << i << "," << format_sci(eigs[i].real())
                         << "," << format_sci(eigs[i].imag()) << ","
                         << format_sci(std::abs(eigs[i])) << "\n";
        }

        if (model.symbols().s0.empty()) {
            // Cross-check table: reciprocals of the full-section eigenvalues
            // against the zeros of the cycle-expansion polynomial.
            OperatorSection full = full_section(model, config.nodes);
            const auto eigs = section_spectrum(full);
            DeterminantSeries series =
                determinant_series(model, std::min(config.order, 18), config.jobs);
            const auto roots = polynomial_roots(series.coeffs);
            auto cross = open_out(config, "spectrum_cross_check.csv");
            cross << "eig_reciprocal_re,eig_reciprocal_im,series_zero_re,series_zero_im,distance\n";
            for (const Complex eig : eigs) {
                if (std::abs(eig) < 0.2) break;
                const Complex zero = 1.0 / eig;
                Complex nearest(0, 0);
                double best = std::numeric_limits<double>::infinity();
                for (Complex r : roots)
                    if (std::abs(r - zero) < best) {
                        best = std::abs(r - zero);
                        nearest = r;
                    }
                cross << format_sci(zero.real()) << "," << format_sci(zero.imag()) << ","
                      << format_sci(nearest.real()) << "," << format_sci(nearest.imag())
                      << "," << format_sci(best) << "\n";
            }
        } else {
            json predictions = json::array();
            auto witnesses_csv = open_out(config, "witnesses.csv");
            witnesses_csv << "symbol,witness\n";
            for (const auto& p : parabolic_spectrum_prediction(model)) {
                predictions.push_back(json{{"symbol", p.symbol},
                                           {"kind", to_string(p.kind)},
                                           {"lambda", p.lambda},
                                           {"interval", {p.interval_lo, p.interval_hi}}});
                for (double w : direct_product_witnesses(p, 200))
                    witnesses_csv << p.symbol << "," << format_sci(w) << "\n";
            }
            auto out = open_out(config, "predictions.json");
            out << predictions.dump(2) << "\n";
        }
        std::cout << "spectrum " << model.name() << ": done\n";
        return 0;
    });
}

int cmd_pinning_check(const RunConfig& config) {
    return guard([&]() -> int {
        SymbolicModel model = config_model(config);
        validate_model(model, config.grid_density);
        auto csv = open_out(config, "pinning_check.csv");
        csv << "word,max_residual,max_ratio\n";
        std::mt19937_64 rng(20240801u);
        std::uniform_real_distribution<double> un(0.1, 0.9);
        double worst_residual = 0.0, worst_ratio = 0.0;
        for (int len = 2; len <= config.word_length; ++len) {
            for (const Word& word : admissible_words(model, len, true)) {
                const auto [lo1, hi1] = domain_real_interval(model.domains(word.front()).d1);
                const auto [lo2, hi2] = domain_real_interval(model.domains(word.back()).d2);
                double max_res = 0.0, max_ratio = 0.0;
                for (int s = 0; s < 10; ++s) {
                    const Complex w1(lo1 + (hi1 - lo1) * un(rng), 0.0);
                    const Complex z2(lo2 + (hi2 - lo2) * un(rng), 0.0);
                    const auto res = iterate_pinning(model, word, w1, z2);
                    max_ratio = std::max(max_ratio, res.ratio);
                    max_res = std::max(max_res,
                                       pinning_residual(model, word, w1, z2));
                }
                std::string wname;
                for (int s : word) wname += std::to_string(s);
                csv << wname << "," << format_sci(max_res) << "," << format_sci(max_ratio)
                    << "\n";
                worst_residual = std::max(worst_residual, max_res);
                worst_ratio = std::max(worst_ratio, max_ratio);
            }
        }
        std::cout << "pinning-check " << model.name() << ": max residual "
                  << worst_residual << ", max ratio " << worst_ratio << "\n";
        return (worst_residual <= config.tol && worst_ratio < 1.0) ? 0 : 1;
    });
}

int cmd_factor(const RunConfig& config) {
    return guard([&]() -> int {
        FactorSpec spec;
        if (config.factor_kind == "sink")
            spec.kind = FactorKind::Sink;
        else if (config.factor_kind == "saddle")
            spec.kind = FactorKind::Saddle;
        else if (config.factor_kind == "source")
            spec.kind = FactorKind::Source;
        else
            throw ParseError("factor kind must be sink, saddle, or source");
        if (!config.has_multipliers)
            throw ParseError("factor requires --lambdaE and --lambdaF");
        spec.lambda_E = config.lambda_E;
        spec.lambda_F = config.lambda_F;
        spec.period = config.period;
        spec.trunc_J = config.trunc_J;
        spec.trunc_K = config.trunc_K;

        auto csv = open_out(config, "factor.csv");
        csv << "re,im,value_re,value_im,abs\n";
        const int radii = 40, angles = 64;
        for (int i = 1; i <= radii; ++i)
            for (int a = 0; a < angles; ++a) {
                const Complex z =
                    std::polar(config.z_max * i / radii, 2.0 * M_PI * a / angles);
                const Complex v = closed_form_factor(spec, z);
                csv << format_sci(z.real()) << "," << format_sci(z.imag()) << ","
                    << format_sci(v.real()) << "," << format_sci(v.imag()) << ","
                    << format_sci(std::abs(v)) << "\n";
            }
        std::cout << "factor " << config.factor_kind << ": grid written\n";
        return 0;
    });
}

}  // namespace detzeta

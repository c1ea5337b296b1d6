// detzeta: pinning coordinates, cycle-expansion determinants, slit sets, and
// transfer-operator sections for symbolic almost-hyperbolic analytic maps.

#include <CLI11.hpp>

#include "detzeta/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"dynamical determinants of almost hyperbolic analytic surface maps"};
    app.require_subcommand(1);

    detzeta::RunConfig config;
    bool le_set = false, lf_set = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--model", config.model_path, "model JSON file");
        cmd->add_option("--example", config.example_id, "builtin example id");
        cmd->add_option("--out", config.out_dir, "output directory");
        cmd->add_option("--order", config.order, "truncation order M");
        cmd->add_option("--nodes", config.nodes, "quadrature nodes per contour");
        cmd->add_option("--jobs", config.jobs, "worker threads");
        cmd->add_option("--tol", config.tol, "tolerance");
        cmd->add_option("--grid", config.grid_density, "validation sampling density");
        cmd->add_option("--truncJ", config.trunc_J, "product truncation J");
        cmd->add_option("--truncK", config.trunc_K, "product truncation K");
    };
    auto add_multipliers = [&](CLI::App* cmd) {
        cmd->add_option("--lambdaE", config.lambda_E, "E multiplier")
            ->each([&](const std::string&) { le_set = true; });
        cmd->add_option("--lambdaF", config.lambda_F, "F multiplier")
            ->each([&](const std::string&) { lf_set = true; });
        cmd->add_option("--period", config.period, "orbit period P");
    };

    auto* validate = app.add_subcommand("validate", "check the model assumptions");
    add_common(validate);
    auto* determinant =
        app.add_subcommand("determinant", "trace sequence and series coefficients");
    add_common(determinant);
    auto* slits = app.add_subcommand("slits", "singularity slit descriptors");
    add_common(slits);
    add_multipliers(slits);
    auto* spectrum = app.add_subcommand("spectrum", "section eigenvalues and predictions");
    add_common(spectrum);
    auto* pinning = app.add_subcommand("pinning-check", "pinning identity audit");
    add_common(pinning);
    pinning->add_option("--length", config.word_length, "max word length");
    auto* factor = app.add_subcommand("factor", "closed-form periodic-orbit factor");
    add_common(factor);
    add_multipliers(factor);
    factor->add_option("--kind", config.factor_kind, "sink | saddle | source");
    factor->add_option("--zmax", config.z_max, "grid radius");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    config.has_multipliers = le_set && lf_set;

    if (validate->parsed()) return detzeta::cmd_validate(config);
    if (determinant->parsed()) return detzeta::cmd_determinant(config);
    if (slits->parsed()) return detzeta::cmd_slits(config);
    if (spectrum->parsed()) return detzeta::cmd_spectrum(config);
    if (pinning->parsed()) return detzeta::cmd_pinning_check(config);
    if (factor->parsed()) return detzeta::cmd_factor(config);
    return 2;
}

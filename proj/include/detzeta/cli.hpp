#pragma once

#include <string>

#include "detzeta/model.hpp"

namespace detzeta {

// Command configuration shared by the CLI binary and the test drivers.
// Exactly one of model_path / example_id selects the model (slits and factor
// also run model-free from multiplier flags).
struct RunConfig {
    std::string model_path;
    std::string example_id;
    std::string out_dir = ".";
    int order = 20;        // trace / series truncation M
    int nodes = 32;        // quadrature nodes per contour N
    int trunc_J = 50;      // product truncations
    int trunc_K = 50;
    int jobs = 1;
    int grid_density = 64;
    int word_length = 6;   // pinning-check audit depth
    double tol = 1e-9;

    // factor / slits flags
    std::string factor_kind;  // sink | saddle | source
    double lambda_E = 0.0;
    double lambda_F = 0.0;
    int period = 1;
    bool has_multipliers = false;
    double z_max = 2.5;
};

// Exit codes: 0 success, 1 domain/validation failure, 2 usage/parse error.
int cmd_validate(const RunConfig& config);
int cmd_determinant(const RunConfig& config);
int cmd_slits(const RunConfig& config);
int cmd_spectrum(const RunConfig& config);
int cmd_pinning_check(const RunConfig& config);
int cmd_factor(const RunConfig& config);

// Loads the configured model (builtin example or JSON file).
SymbolicModel config_model(const RunConfig& config);

// 17-significant-digit scientific notation used by every CSV emitter, so
// doubles round-trip exactly and output is byte-stable.
std::string format_sci(double v);

}  // namespace detzeta

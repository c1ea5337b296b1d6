#pragma once

#include <string>
#include <vector>

#include "detzeta/model.hpp"

namespace detzeta {

struct EdgeReport {
    std::pair<int, int> edge;
    double contraction_margin = 0.0;  // min interior margin of f^1 images
    double phi_s_margin = 0.0;        // min interior margin of partial-inverse images
    double min_abs_det = 0.0;         // min |det Df| on the sampled real rectangle
    int samples = 0;
};

struct ValidationReport {
    bool ok = false;
    std::string model_name;
    bool transitions_irreducible = false;
    std::vector<EdgeReport> edges;
    std::string to_json_text() const;
};

// Sampled verification of the model assumptions: per edge, (a) contraction of
// the first component into the interior of the target domain (also on the
// extension-margin-enlarged source), (b) solvability of the partial inverse
// with image strictly interior, (c) nonvanishing Jacobian determinant on the
// real rectangle, and (d) irreducibility of the transition matrix. Sampling
// density: grid_density boundary points and (grid_density/4)^2 interior
// points per domain. Fails fast: the first violated condition raises
// StructuralError / GeometryError / SolveError with a witness point.
ValidationReport validate_model(const SymbolicModel& model, int grid_density = 64);

}  // namespace detzeta

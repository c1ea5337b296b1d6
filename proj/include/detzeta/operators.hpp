#pragma once

#include <Eigen/Dense>

#include "detzeta/determinant.hpp"
#include "detzeta/pinning.hpp"

namespace detzeta {

// ---------------------------------------------------------------------------
// Contour geometry and finite sections
// ---------------------------------------------------------------------------

struct NodeGeometry {
    int symbol = -1;
    std::vector<Complex> nodes1, weights1;  // w1 contour, weights dw/(2 pi i)
    std::vector<Complex> nodes2, weights2;  // w2 contour
    int size() const {
        return static_cast<int>(nodes1.size() * nodes2.size());
    }
};

NodeGeometry make_node_geometry(const SymbolicModel& model, int symbol,
                                int nodes_override = 0);

bool same_geometry(const NodeGeometry& a, const NodeGeometry& b, double tol = 1e-12);

// Nystrom section of an elementary transfer operator: rows collocate the
// image on the target symbol's contours, columns carry quadrature weights on
// the source symbol's contours. Row index a*N2 + b pairs (z1_a, z2_b).
struct OperatorSection {
    Word word;  // (k, j) for an elementary section, longer after composition
    NodeGeometry source, target;
    Eigen::MatrixXcd matrix;
    double min_denominator = 0.0;  // smallest kernel denominator modulus seen
};

// Sampled contour-placement checks for the parabolic symbols: the w2 contour
// of a (P.a) symbol must enclose the compact union of incoming partial-inverse
// images with positive clearance, and the w1 contour of a (P.b) symbol must
// stay clear of (and not enclose) the union of incoming unstable images.
struct ContourCheck {
    int symbol = -1;
    double clearance = 0.0;  // min distance between contour and the compact set
    bool enclosed = false;   // set is inside the contour disc
};
ContourCheck validate_contour(const SymbolicModel& model, int symbol,
                              int grid_density = 12);

// Builds the section of the elementary operator on edge (k, j). Hyperbolic
// and mixed edges use the double-contour Cauchy kernel; a (P.a) self-edge
// uses the same kernel with the petal contour; a (P.b) self-edge uses the
// inverse-branch form with Newton inversion and Cauchy interpolation in the
// first coordinate (which demands the inverse image stay inside the petal
// contour; ContourViolation otherwise).
OperatorSection build_section(const SymbolicModel& model, std::pair<int, int> edge,
                              int nodes_override = 0);

OperatorSection compose_sections(const OperatorSection& a, const OperatorSection& b);

// Section of the iterated operator along an admissible word (composition of
// per-edge sections).
OperatorSection word_section(const SymbolicModel& model, const Word& word,
                             int nodes_override = 0);

Complex section_trace(const OperatorSection& s);

// Trace of the iterated operator along a cyclic word (the closing edge back
// to the first symbol is implied), reusing cached per-edge sections and
// contracting with a single matrix product for short words.
class SectionCache {
public:
    SectionCache(const SymbolicModel& model, int nodes_override = 0)
        : model_(&model), nodes_(nodes_override) {}
    const OperatorSection& edge(int k, int j);

private:
    const SymbolicModel* model_;
    int nodes_;
    std::map<std::pair<int, int>, OperatorSection> cache_;
};

Complex cycle_section_trace(SectionCache& cache, const Word& cycle);
std::vector<Complex> section_spectrum(const OperatorSection& s);
Complex section_fredholm_det(const OperatorSection& s, Complex z);

// Full one-step operator of a purely hyperbolic model as one matrix over the
// direct sum of the per-symbol node spaces. Models with parabolic symbols are
// rejected: their one-step operator has continuous spectrum and is analysed
// through the direct-product model operators instead.
OperatorSection full_section(const SymbolicModel& model, int nodes_override = 0);

// ---------------------------------------------------------------------------
// Approximate Fatou conjugation
// ---------------------------------------------------------------------------

struct FatouData {
    int symbol = -1;
    BlockKind kind = BlockKind::ParabolicPa;
    BivariateSeries error_series;  // E_{k,2}(w1,z2) for (P.a); E_{k,1}(z1,z2) for (P.b)
    double half_plane_R = 0.0;
};

// Error series of the approximate Fatou coordinate F(z) = 1/z:
//   (P.a)  F(phi_s(w1,z2)) = F(z2) + 1 + z2 E(w1,z2)
//   (P.b)  F(phi_u^{-1}(z1,z2)) = F(z1) - 1 + z1 E(z1,z2)
// The removable singularity is handled by series division; a nonvanishing
// constant term (normal-form violation) raises SingularityNotRemovable.
FatouData fatou_conjugate(const SymbolicModel& model, int symbol, int max_deg1 = 12,
                          int max_deg2 = 20);

// Series-level workers, exposed for direct verification.
BivariateSeries fatou_error_series_pa(const BivariateSeries& phi_s, int max_deg1,
                                      int max_deg2);
BivariateSeries fatou_error_series_pb(const BivariateSeries& phi_u, int max_deg1,
                                      int max_deg2);
// Inverse branch of phi_u in the first variable as a series (P.b).
BivariateSeries invert_series_w1(const BivariateSeries& phi_u, int max_deg1,
                                 int max_deg2);

// Max residual of the defining identity over a sample grid in the petal.
double fatou_residual(const SymbolicModel& model, const FatouData& data,
                      int grid_density = 10);

// ---------------------------------------------------------------------------
// Direct-product model operators
// ---------------------------------------------------------------------------

enum class ModelOperatorKind { Tplus, Tminus, Mu, Ms };

struct ModelOperator {
    ModelOperatorKind kind = ModelOperatorKind::Tplus;
    double lambda = 0.0;          // Mu / Ms parameter, |lambda| < 1
    std::vector<double> t_grid;   // T+- discretization points, t >= 0
};

struct ModelSpectrum {
    bool has_interval = false;
    double interval_lo = 0.0, interval_hi = 0.0;
    std::vector<double> points;  // eigenvalues (M) or diagonal witnesses (T+-)
};

// T+-: continuous spectrum [0,1] with the diagonal entries e^{-t_i} as
// witnesses. Mu: eigenvalues lambda^l, l >= 0. Ms: (sgn lambda) lambda^l,
// l >= 1.
ModelSpectrum model_operator_spectrum(const ModelOperator& op, int max_power = 60);

// Exact trace of the l-th power: Mu: 1/(1-lambda^l); Ms: |lambda|^l/(1-lambda^l).
double model_operator_power_trace(const ModelOperator& op, int power);

// Witness points of the direct product (M x T) densifying the predicted
// interval; sorted ascending.
std::vector<double> direct_product_witnesses(const ParabolicPrediction& prediction,
                                             int grid_size);

// ---------------------------------------------------------------------------
// Perturbation gap
// ---------------------------------------------------------------------------

// Sampled sup of the deviation between the parabolic self-block and its
// linear model on domains rescaled by epsilon:
//   (P.a)  sup |lambda_u - phi_u(w1,z2)/w1|   over w1 on the scaled D^1 boundary
//   (P.b)  sup max(|lambda_s - phi_s/z2|, |lambda_s - d2 phi_s|) over the
//          scaled attracting petal.
double parabolic_deviation(const SymbolicModel& model, int symbol, double epsilon,
                           int grid_density = 24);

}  // namespace detzeta

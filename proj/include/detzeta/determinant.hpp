#pragma once

#include <string>
#include <vector>

#include "detzeta/pinning.hpp"

namespace detzeta {

// ---------------------------------------------------------------------------
// Trace sequence and cycle-expansion coefficients
// ---------------------------------------------------------------------------

struct DeterminantSeries {
    std::vector<double> traces;  // d_1..d_M
    std::vector<double> coeffs;  // c_0..c_M
    int order = 0;               // M
};

// d_m = sum over cyclically admissible words of length m (not all-S0) of
// 1/|det(Df^m(x) - Id)| at the word's periodic point. Deterministic: terms
// are accumulated with compensated summation in enumeration order over fixed
// chunks, so the result is bit-identical for every worker count.
std::vector<double> trace_sequence(const SymbolicModel& model, int order, int jobs = 1);

// c_0 = 1, n c_n = -sum_{m=1..n} d_m c_{n-m}  (power-series exponential).
std::vector<double> determinant_coefficients(const std::vector<double>& traces);

DeterminantSeries determinant_series(const SymbolicModel& model, int order,
                                     int jobs = 1);

struct EvalResult {
    Complex value;
    double tail_bound = 0.0;
};

// Horner evaluation of sum c_n z^n with a geometric tail estimate from the
// trailing coefficient ratios; TailNotConverging when those ratios reach 1.
EvalResult evaluate_determinant(const DeterminantSeries& series, Complex z);

// Smallest-modulus zero of the truncated polynomial (companion-matrix roots);
// returns 0-count when the polynomial is constant.
std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs);
double smallest_zero_modulus(const DeterminantSeries& series);

// ---------------------------------------------------------------------------
// Closed-form factors for isolated hyperbolic periodic orbits
// ---------------------------------------------------------------------------

enum class FactorKind { Sink, Saddle, Source };

struct FactorSpec {
    FactorKind kind = FactorKind::Saddle;
    double lambda_E = 0.0;
    double lambda_F = 0.0;
    int period = 1;
    int trunc_J = 50;
    int trunc_K = 50;
};

// Truncated double product:
//   sink    prod_{j>=0} prod_{k>=0} (1 - z^P lE^j lF^k),      |lE| < |lF| < 1
//   saddle  prod_{j>=0} prod_{k>=1} (1 - z^P lE^j lF^{-k}),   |lE| < 1 < |lF|
//   source  prod_{j>=1} prod_{k>=1} (1 - z^P lE^{-j} lF^{-k}), 1 < |lE| < |lF|
Complex closed_form_factor(const FactorSpec& spec, Complex z);

// ---------------------------------------------------------------------------
// Slit sets
// ---------------------------------------------------------------------------

struct SlitSet {
    int period = 1;
    std::string case_tag;     // which line of the neutral-multiplier case list
    double base_lo = 0.0;     // base interval [a, b]
    double base_hi = 0.0;
    double scale = 1.0;       // 1 or 1/|lambda_F|
    // Radial segments of the set in the z-plane: {t e^{i angle}, t in [t0, t1]}.
    struct Ray {
        double angle;
        double t0, t1;
    };
    std::vector<Ray> rays() const;
};

// The singularity set attached to a neutral periodic point with multipliers
// (lambda_E, lambda_F), exactly one of modulus one, and period P.
SlitSet slit_set(double lambda_E, double lambda_F, int period);

// Membership means dist(z^P, scale*[a,b]) <= tol; the distance query is the
// exact Euclidean distance from z to the radial-segment preimage.
bool slit_membership(const SlitSet& slit, Complex z, double tol);
double slit_distance(const SlitSet& slit, Complex z);

// ---------------------------------------------------------------------------
// Parabolic direct-product spectrum prediction
// ---------------------------------------------------------------------------

struct ParabolicPrediction {
    int symbol = -1;
    BlockKind kind = BlockKind::ParabolicPa;
    double lambda = 0.0;      // lambda_{k,u} (P.a) or lambda_{k,s} (P.b)
    double interval_lo = 0.0;
    double interval_hi = 0.0;
};

// For each parabolic symbol, the hyperbolic coefficient of the linearized
// self-block and the predicted spectral interval of the direct-product model
// operator:  P.a: [0,1] (lambda_u > 0) or [lambda_u, 1];
//            P.b: [0, lambda_s] (lambda_s > 0) or [-lambda_s^2, -lambda_s].
std::vector<ParabolicPrediction> parabolic_spectrum_prediction(
    const SymbolicModel& model);

}  // namespace detzeta

#pragma once

#include <complex>
#include <functional>
#include <utility>

#include "detzeta/errors.hpp"

namespace detzeta {

using Complex = std::complex<double>;
using Complex2 = std::pair<Complex, Complex>;

struct SolveOptions {
    double tol = 1e-12;
    int max_iter = 60;
    double damping = 1.0;  // in (0,1]; initial Newton step fraction
};

struct NewtonResult {
    Complex root;
    int iterations = 0;
    double residual = 0.0;
};

// Newton iteration for g(z)=0 near `seed`. Refuses nearly-degenerate roots
// (|g'| < 1e-14) instead of switching methods; if a full step leaves the
// caller's domain (g throws DomainError) the step is halved a few times.
NewtonResult newton_solve_1d(const std::function<Complex(Complex)>& g,
                             const std::function<Complex(Complex)>& g_prime,
                             Complex seed, const SolveOptions& opts = {});

struct FixedPointResult {
    Complex2 point;
    double ratio = 0.0;  // observed geometric contraction ratio
    int iterations = 0;
    double residual = 0.0;
};

// Picard iteration for a map contracting a closed region into its interior.
// The ratio estimate is the maximum of successive step-norm ratios over the
// last 5 iterations; ten consecutive ratios >= 1 abort with RatioAboveOne.
FixedPointResult contraction_fixed_point(
    const std::function<Complex2(const Complex2&)>& map, Complex2 seed,
    const SolveOptions& opts = {});

}  // namespace detzeta

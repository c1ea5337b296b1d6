#include "detzeta/solve.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace detzeta {

namespace {
double norm2(const Complex2& p) {
    return std::max(std::abs(p.first), std::abs(p.second));
}
}  // namespace

NewtonResult newton_solve_1d(const std::function<Complex(Complex)>& g,
                             const std::function<Complex(Complex)>& g_prime,
                             Complex seed, const SolveOptions& opts) {
    if (opts.tol <= 0 || opts.max_iter < 1)
        throw DomainError("invalid solver options");
    Complex z = seed;
    Complex fz = g(z);
    for (int it = 1; it <= opts.max_iter; ++it) {
        // Degenerate roots are refused, not polished with higher-order steps;
        // the floor is checked before acceptance.
        const Complex dz = g_prime(z);
        if (std::abs(dz) < 1e-14)
            throw DerivativeVanished("|g'| < 1e-14 at iterate " + format_point(z));
        if (std::abs(fz) <= opts.tol) return {z, it - 1, std::abs(fz)};
        Complex step = opts.damping * fz / dz;
        // Back off when the trial point leaves the evaluation domain.
        for (int half = 0;; ++half) {
            try {
                const Complex trial = z - step;
                const Complex ftrial = g(trial);
                z = trial;
                fz = ftrial;
                break;
            } catch (const DomainError&) {
                if (half >= 8)
                    throw NoConvergence("Newton step exits the domain near " +
                                        format_point(z));
                step *= 0.5;
            }
        }
    }
    if (std::abs(fz) <= opts.tol) return {z, opts.max_iter, std::abs(fz)};
    throw NoConvergence("Newton failed after " + std::to_string(opts.max_iter) +
                        " iterations, residual " + std::to_string(std::abs(fz)));
}

FixedPointResult contraction_fixed_point(
    const std::function<Complex2(const Complex2&)>& map, Complex2 seed,
    const SolveOptions& opts) {
    if (opts.tol <= 0 || opts.max_iter < 1)
        throw DomainError("invalid solver options");
    Complex2 x = seed;
    std::deque<double> step_norms;
    int above_one = 0;
    double ratio = 0.0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        const Complex2 fx = map(x);
        const Complex2 step{fx.first - x.first, fx.second - x.second};
        const double sn = norm2(step);
        if (!step_norms.empty() && step_norms.back() > 0.0) {
            const double r = sn / step_norms.back();
            if (r >= 1.0) {
                if (++above_one >= 10)
                    throw RatioAboveOne("step ratios >= 1 for 10 consecutive iterations");
            } else {
                above_one = 0;
            }
        }
        step_norms.push_back(sn);
        if (step_norms.size() > 6) step_norms.pop_front();
        x = fx;
        if (sn <= opts.tol) {
            ratio = 0.0;
            for (std::size_t i = 1; i < step_norms.size(); ++i)
                if (step_norms[i - 1] > 0.0)
                    ratio = std::max(ratio, step_norms[i] / step_norms[i - 1]);
            const Complex2 res = map(x);
            return {x, ratio,
                    it, norm2({res.first - x.first, res.second - x.second})};
        }
    }
    throw NoConvergence("fixed point iteration failed after " +
                        std::to_string(opts.max_iter) + " iterations");
}

}  // namespace detzeta

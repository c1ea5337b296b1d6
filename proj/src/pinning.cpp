#include "detzeta/pinning.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace detzeta {

namespace {

double sup_imag(const std::vector<Complex2>& pts) {
    double m = 0.0;
    for (const auto& p : pts)
        m = std::max({m, std::abs(p.first.imag()), std::abs(p.second.imag())});
    return m;
}

}  // namespace

PinningPair::PinningPair(const SymbolicModel& model, std::pair<int, int> edge,
                         int sign_s)
    : model_(&model),
      edge_(edge),
      block_(&model.block(edge.first, edge.second)),
      seed_center_(model.domain_center2(edge.first)),
      sign_s_(sign_s) {}

Complex PinningPair::phi_s(Complex w1, Complex z2) const {
    return block_->phi_s(w1, z2, seed_center_, opts_);
}

Complex PinningPair::phi_u(Complex w1, Complex z2) const {
    return block_->phi_u(w1, z2, seed_center_, opts_);
}

Complex PinningPair::dphi_s_d2(Complex w1, Complex z2) const {
    return block_->dphi_s_d2(w1, z2, seed_center_, opts_);
}

Complex PinningPair::dphi_s_d1(Complex w1, Complex z2) const {
    return block_->dphi_s_d1(w1, z2, seed_center_, opts_);
}

PinningPair build_pinning_pair(const SymbolicModel& model, std::pair<int, int> edge) {
    const auto [i, j] = edge;
    if (!model.has_edge(i, j))
        throw AdmissibilityError("no transition on edge (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
    PinningPair pair(model, edge, +1);
    const auto [lo1, hi1] = domain_real_interval(model.domains(i).d1);
    const auto [lo2, hi2] = domain_real_interval(model.domains(j).d2);
    auto sign_at = [&](double x1, double x2) {
        const Complex d = pair.dphi_s_d2(Complex(x1, 0), Complex(x2, 0));
        if (std::abs(d.imag()) > 1e-9 || std::abs(d.real()) < 1e-13)
            throw SignInconsistency("d2 phi_s not real and nonzero at (" +
                                    std::to_string(x1) + "," + std::to_string(x2) + ")");
        return d.real() > 0 ? +1 : -1;
    };
    const int s0 = sign_at(0.5 * (lo1 + hi1), 0.5 * (lo2 + hi2));
    std::mt19937_64 rng(0x9e3779b9u ^ (static_cast<std::uint64_t>(i) << 20) ^ j);
    std::uniform_real_distribution<double> un(0.05, 0.95);
    for (int k = 0; k < 20; ++k) {
        const double x1 = lo1 + (hi1 - lo1) * un(rng);
        const double x2 = lo2 + (hi2 - lo2) * un(rng);
        if (sign_at(x1, x2) != s0)
            throw SignInconsistency("sign of d2 phi_s flips on the real rectangle of edge (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
    }
    return PinningPair(model, edge, s0);
}

namespace {

struct OrbitSystem {
    const SymbolicModel* model;
    std::vector<const BlockMap*> blocks;  // blocks[k]: edge (word[k], word[k+1])
    std::vector<Complex> seed_centers;    // source D^2 centers per step

    OrbitSystem(const SymbolicModel& m, const Word& word, bool cyclic) : model(&m) {
        const std::size_t steps = cyclic ? word.size() : word.size() - 1;
        for (std::size_t k = 0; k < steps; ++k) {
            const int a = word[k];
            const int b = word[(k + 1) % word.size()];
            if (!m.has_edge(a, b))
                throw AdmissibilityError("word is not admissible at position " +
                                         std::to_string(k));
            blocks.push_back(&m.block(a, b));
            seed_centers.push_back(m.domain_center2(a));
        }
    }

    Complex phi_s(std::size_t k, Complex u, Complex s_next, const SolveOptions& o) const {
        return blocks[k]->phi_s(u, s_next, seed_centers[k], o);
    }
    Complex phi_u(std::size_t k, Complex u, Complex s_next, const SolveOptions& o) const {
        return blocks[k]->phi_u(u, s_next, seed_centers[k], o);
    }
};

struct SweepOutcome {
    double ratio = 0.0;
    int sweeps = 0;
};

// Alternating forward (u) / backward (s) relaxation of the pinned-orbit
// relations u_{k+1} = phi_u(u_k, s_{k+1}), s_k = phi_s(u_k, s_{k+1}).
// `anchored` fixes u_0 and s_n (iterated pinning); otherwise indices wrap
// (periodic orbit).
SweepOutcome sweep_orbit(const OrbitSystem& sys, std::vector<Complex>& u,
                         std::vector<Complex>& s, bool anchored,
                         const SolveOptions& opts) {
    const std::size_t steps = sys.blocks.size();
    const SolveOptions inner{1e-13, 80, 1.0};
    std::vector<double> deltas;
    int above_one = 0;
    for (int sweep = 1; sweep <= opts.max_iter; ++sweep) {
        double delta = 0.0;
        if (anchored) {
            for (std::size_t k = 0; k < steps; ++k) {
                const Complex nu = sys.phi_u(k, u[k], s[k + 1], inner);
                delta = std::max(delta, std::abs(nu - u[k + 1]));
                u[k + 1] = nu;
            }
            for (std::size_t k = steps; k-- > 0;) {
                const Complex ns = sys.phi_s(k, u[k], s[k + 1], inner);
                delta = std::max(delta, std::abs(ns - s[k]));
                s[k] = ns;
            }
        } else {
            const std::size_t m = steps;
            for (std::size_t k = 0; k < m; ++k) {
                const Complex nu = sys.phi_u(k, u[k], s[(k + 1) % m], inner);
                delta = std::max(delta, std::abs(nu - u[(k + 1) % m]));
                u[(k + 1) % m] = nu;
            }
            for (std::size_t k = m; k-- > 0;) {
                const Complex ns = sys.phi_s(k, u[k], s[(k + 1) % m], inner);
                delta = std::max(delta, std::abs(ns - s[k]));
                s[k] = ns;
            }
        }
        if (!deltas.empty() && deltas.back() > 0.0) {
            const double r = delta / deltas.back();
            if (r >= 1.0 && delta > 16 * opts.tol) {
                if (++above_one >= 10)
                    throw RatioAboveOne("pinned-orbit sweep is not contracting");
            } else {
                above_one = 0;
            }
        }
        deltas.push_back(delta);
        if (delta <= opts.tol) {
            // Observed geometric ratio over the last few pre-floor sweeps.
            double ratio = 0.0;
            for (std::size_t k = deltas.size(); k-- > 1;) {
                if (deltas[k] <= 64 * opts.tol) continue;
                if (deltas[k - 1] > 0.0)
                    ratio = std::max(ratio, deltas[k] / deltas[k - 1]);
                if (deltas.size() - k > 5) break;
            }
            return {ratio, sweep};
        }
    }
    throw NoConvergence("pinned-orbit sweep did not reach tolerance " +
                        std::to_string(opts.tol));
}

}  // namespace

IteratedPinningResult iterate_pinning(const SymbolicModel& model, const Word& word,
                                      Complex w1, Complex z2, const SolveOptions& opts) {
    if (word.size() < 2) throw AdmissibilityError("word must have length >= 2");
    if (!model.is_admissible(word)) throw AdmissibilityError("word is not admissible");
    if (model.all_in_s0(word))
        throw AdmissibilityError("word lies entirely in S0");
    const int first = word.front(), last = word.back();
    if (!domain_contains(model.domains(first).d1, w1) &&
        !domain_contains_image(model.domains(first).d1, w1))
        throw DomainError("w1 outside the first domain of symbol " +
                          std::to_string(first));
    if (!domain_contains(model.domains(last).d2, z2) &&
        !domain_contains_image(model.domains(last).d2, z2))
        throw DomainError("z2 outside the second domain of symbol " +
                          std::to_string(last));

    OrbitSystem sys(model, word, /*cyclic=*/false);
    const std::size_t n = sys.blocks.size();
    std::vector<Complex> u(n + 1), s(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        u[k] = model.domain_center1(word[k]);
        s[k] = model.domain_center2(word[k]);
    }
    u[0] = w1;
    s[n] = z2;
    auto outcome = sweep_orbit(sys, u, s, /*anchored=*/true, opts);

    IteratedPinningResult res;
    res.phi_s = s[0];
    res.phi_u = u[n];
    res.ratio = outcome.ratio;
    res.sweeps = outcome.sweeps;
    res.orbit.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) res.orbit.push_back({u[k], s[k]});
    return res;
}

double pinning_residual(const SymbolicModel& model, const Word& word, Complex w1,
                        Complex z2, const SolveOptions& opts) {
    const auto res = iterate_pinning(model, word, w1, z2, opts);
    Complex2 x{w1, res.phi_s};
    for (std::size_t k = 0; k + 1 < word.size(); ++k)
        x = model.block(word[k], word[k + 1]).map_point(x);
    return std::max(std::abs(x.first - res.phi_u), std::abs(x.second - z2));
}

CycleRecord periodic_point(const SymbolicModel& model, const Word& cycle,
                           const SolveOptions& opts) {
    if (cycle.empty()) throw AdmissibilityError("empty cycle word");
    if (!model.is_admissible(cycle) ||
        !model.transitions().at(cycle.back(), cycle.front()))
        throw AdmissibilityError("cycle word is not cyclically admissible");
    if (model.all_in_s0(cycle))
        throw AdmissibilityError("cycle word lies entirely in S0");

    OrbitSystem sys(model, cycle, /*cyclic=*/true);
    const std::size_t m = cycle.size();
    std::vector<Complex> u(m), s(m);
    for (std::size_t k = 0; k < m; ++k) {
        u[k] = model.domain_center1(cycle[k]);
        s[k] = model.domain_center2(cycle[k]);
    }
    auto outcome = sweep_orbit(sys, u, s, /*anchored=*/false, opts);

    CycleRecord rec;
    rec.word = cycle;
    rec.ratio = outcome.ratio;
    rec.orbit.reserve(m);
    for (std::size_t k = 0; k < m; ++k) rec.orbit.push_back({u[k], s[k]});
    rec.point = rec.orbit[0];

    if (sup_imag(rec.orbit) > 1e-8)
        throw NonRealPoint("periodic orbit has imaginary part above 1e-8 for word of length " +
                           std::to_string(m));

    // Multipliers from the exact block Jacobians chained along the orbit.
    // The 2x2 product is computed in real arithmetic.
    double J[4] = {1, 0, 0, 1};
    for (std::size_t k = 0; k < m; ++k) {
        const auto B = sys.blocks[k]->jacobian(rec.orbit[k].first, rec.orbit[k].second);
        const double b[4] = {B[0].real(), B[1].real(), B[2].real(), B[3].real()};
        const double n0 = b[0] * J[0] + b[1] * J[2];
        const double n1 = b[0] * J[1] + b[1] * J[3];
        const double n2 = b[2] * J[0] + b[3] * J[2];
        const double n3 = b[2] * J[1] + b[3] * J[3];
        J[0] = n0; J[1] = n1; J[2] = n2; J[3] = n3;
    }
    const double tr = J[0] + J[3];
    const double det = J[0] * J[3] - J[1] * J[2];
    const double disc = tr * tr - 4.0 * det;
    if (disc < 0)
        throw NonHyperbolic("complex multiplier pair on cycle (discriminant " +
                            std::to_string(disc) + ")");
    const double sq = std::sqrt(disc);
    double l1 = 0.5 * (tr + sq), l2 = 0.5 * (tr - sq);
    // The smaller multiplier is recovered from the determinant to avoid
    // cancellation when |tr| is large.
    if (std::abs(l1) >= std::abs(l2) && std::abs(l1) > 0) l2 = det / l1;
    else if (std::abs(l2) > 0) l1 = det / l2;
    if (std::abs(l1) > std::abs(l2)) std::swap(l1, l2);
    rec.lambda_E = l1;
    rec.lambda_F = l2;
    if (std::abs(std::abs(rec.lambda_E) - 1.0) < 1e-12 ||
        std::abs(std::abs(rec.lambda_F) - 1.0) < 1e-12)
        throw NonHyperbolic("neutral multiplier on a word expected to be hyperbolic");
    rec.det_factor = std::abs((J[0] - 1.0) * (J[3] - 1.0) - J[1] * J[2]);
    rec.trace_term = 1.0 / rec.det_factor;
    return rec;
}

}  // namespace detzeta

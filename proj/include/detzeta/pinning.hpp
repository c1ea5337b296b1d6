#pragma once

#include <optional>
#include <vector>

#include "detzeta/model.hpp"

namespace detzeta {

// One-step pinning coordinates for an edge (i,j): phi_s(w1,z2) solves
// f^2_{ij}(w1, .) = z2, and phi_u(w1,z2) = f^1_{ij}(w1, phi_s(w1,z2)).
// sign_s is the constant sign of d2 phi_s on the real rectangle.
class PinningPair {
public:
    PinningPair(const SymbolicModel& model, std::pair<int, int> edge, int sign_s);

    std::pair<int, int> edge() const { return edge_; }
    int sign_s() const { return sign_s_; }

    Complex phi_s(Complex w1, Complex z2) const;
    Complex phi_u(Complex w1, Complex z2) const;
    Complex dphi_s_d2(Complex w1, Complex z2) const;
    Complex dphi_s_d1(Complex w1, Complex z2) const;

private:
    const SymbolicModel* model_;
    std::pair<int, int> edge_;
    const BlockMap* block_;
    Complex seed_center_;
    int sign_s_;
    SolveOptions opts_{1e-13, 80, 1.0};
};

// Determines sign_s at the rectangle center and confirms it at 20 random real
// samples (deterministic seed); SignInconsistency if the samples disagree.
PinningPair build_pinning_pair(const SymbolicModel& model, std::pair<int, int> edge);

struct IteratedPinningResult {
    Complex phi_s;               // phi^{(n)}_s(w1, z2)
    Complex phi_u;               // phi^{(n)}_u(w1, z2)
    double ratio = 0.0;          // observed contraction ratio of the orbit solve
    int sweeps = 0;
    std::vector<Complex2> orbit;  // x^0..x^n along the word
};

// Iterated pinning maps for an admissible word (i_1..i_{n+1}) not entirely in
// S0. The unique pinned orbit (x^0..x^n with x^0 = (w1, .) and x^n = (., z2))
// is computed by alternating forward/backward sweeps of the one-step pinning
// relations; this is the simultaneous form of peeling one symbol at a time
// and converges geometrically for valid models.
IteratedPinningResult iterate_pinning(const SymbolicModel& model, const Word& word,
                                      Complex w1, Complex z2,
                                      const SolveOptions& opts = {1e-12, 400, 1.0});

// Defining-identity audit: applies the block chain to (w1, phi^{(n)}_s) and
// returns the sup-norm deviation from (phi^{(n)}_u, z2).
double pinning_residual(const SymbolicModel& model, const Word& word, Complex w1,
                        Complex z2, const SolveOptions& opts = {1e-12, 400, 1.0});

struct CycleRecord {
    Word word;
    Complex2 point;       // fixed point of the m-step map, real for valid models
    double lambda_E = 0;  // multipliers of the m-step Jacobian, |lambda_E| < |lambda_F|
    double lambda_F = 0;
    double det_factor = 0;  // |det(Df^m(x) - Id)|
    double trace_term = 0;  // 1 / det_factor
    double ratio = 0.0;
    std::vector<Complex2> orbit;  // x^0..x^{m-1}
};

// Locates the unique periodic point of an admissible cycle word (not all-S0)
// by solving the cyclic pinned-orbit system, then polishing with the two
// dimensional contraction (w1, z2) -> (phi_u^{(m)}, phi_s^{(m)}). Multipliers
// come from the exact block Jacobians chained along the orbit.
CycleRecord periodic_point(const SymbolicModel& model, const Word& cycle,
                           const SolveOptions& opts = {1e-13, 500, 1.0});

}  // namespace detzeta

#pragma once

#include <string>
#include <vector>

#include "detzeta/model.hpp"

namespace detzeta {

// Builtin example models used as fixtures throughout the test and acceptance
// suites:
//   linear-saddle          one hyperbolic symbol, f(w1,w2) = (w1/2, 2 w2)
//   two-symbol-affine      full 2-shift of affine saddle blocks, distinct fixed points
//   bipartite-affine       two symbols, transitions 0<->1 only (no odd cycles)
//   parabolic-Pa           parabolic symbol with phi_s = z2 - z2^2 plus a hyperbolic symbol
//   parabolic-Pa-quadratic parabolic-Pa with f^1 = w1/2 + 0.1 w1^2 on a unit disc
//   parabolic-Pb           mirror case, phi_u = w1 - w1^2, expanding f^2 = 2 w2
//   broken-inclusion       linear-saddle with f^1 = 1.5 w1 (violates contraction)
//   broken-reducible       two symbols with no connecting transitions
SymbolicModel make_example(const std::string& id);

std::vector<std::string> example_ids();

}  // namespace detzeta

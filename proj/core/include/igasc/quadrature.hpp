#pragma once

#include <vector>

namespace igasc {

/// Gauss-Hermite rule for expectations under a standard normal:
/// E[f(Z)] ~= sum_i weights[i] * f(nodes[i]), weights sum to one.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Builds the n-point rule (Golub-Welsch). Rules are cached per n.
const GaussHermiteRule& gauss_hermite(int n);

}  // namespace igasc

#pragma once

#include <vector>

namespace fvimex {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule, nodes ascending. Cached per n.
const QuadratureRule& gauss_legendre(int n);

}  // namespace fvimex

#pragma once

#include <span>
#include <vector>

namespace lightcone::numerics {

// Fornberg's algorithm: weights w such that f^(order)(x0) ~= sum_i w_i f(x_i)
// for arbitrary (distinct) stencil points.
std::vector<double> fornberg_weights(double x0, std::span<const double> x, int order);

// Derivative of `order` at sample i of uniformly spaced data, 6th-order
// accurate. Uses a centred 7-point stencil in the interior and a shifted
// stencil of the same width near the ends.
double uniform_derivative(std::span<const double> values, std::size_t i, double h, int order);

}  // namespace lightcone::numerics

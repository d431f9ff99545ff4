#pragma once

#include <span>
#include <string>
#include <vector>

namespace heightlab {

/// A numerical value with an error estimate and the method that produced it.
struct Estimate {
  double value = 0.0;
  double est_error = 0.0;
  long nodes = 0;
  std::string method;
};

// Pairwise (cascade) summation. The result depends only on the input order.
double pairwise_sum(std::span<const double> values);

/// Gauss-Legendre nodes and weights mapped to [lo, hi].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n, double lo, double hi);

// Periodic trapezoid nodes θ_j = 2πj/n; every weight is 2π/n.
std::vector<double> trapezoid_angles(int n);

}  // namespace heightlab

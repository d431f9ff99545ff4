#pragma once

#include <utility>

#include "heightlab/core.hpp"

namespace heightlab {

/// Height of a point: h is the logarithmic height (natural log), H = e^h.
struct PointHeight {
  double h = 0.0;
  double H = 1.0;
  MetricSpec metric;
};

// log ||x||_p for integer coordinates, accurate for arbitrarily large entries.
double log_lp_norm(std::span<const BigInt> x, double p);

// h = log ||x||_p + λ/2 (+ u(z)/2 for a twisted metric on P^1).
PointHeight point_height(const RationalPoint& x, const MetricSpec& metric);

// Absolute height over Q(i). The two complex embeddings give conjugate
// coordinates with equal moduli, so the Galois average collapses to the
// L^p norm of the moduli.
PointHeight gaussian_height(const GaussianPoint& x, const MetricSpec& metric);

// (h_{φ+λ}(x), h_φ(x) + λ/2).
std::pair<double, double> height_shift_check(const RationalPoint& x, const MetricSpec& metric, double lambda);

}  // namespace heightlab

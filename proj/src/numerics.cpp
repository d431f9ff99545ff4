#include "heightlab/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <gsl/gsl_integration.h>

namespace heightlab {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

GaussRule gauss_legendre(int n, double lo, double hi) {
  // GSL tables are expensive to build for large n; cache the [-1,1] rules.
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  GaussRule unit;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
      gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n));
      GaussRule rule;
      rule.nodes.resize(n);
      rule.weights.resize(n);
      for (int i = 0; i < n; ++i)
        gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &rule.nodes[i], &rule.weights[i], table);
      gsl_integration_glfixed_table_free(table);
      it = cache.emplace(n, std::move(rule)).first;
    }
    unit = it->second;
  }
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int i = 0; i < n; ++i) {
    unit.nodes[i] = mid + half * unit.nodes[i];
    unit.weights[i] *= half;
  }
  return unit;
}

std::vector<double> trapezoid_angles(int n) {
  std::vector<double> t(n);
  for (int j = 0; j < n; ++j) t[j] = 2.0 * std::numbers::pi * j / n;
  return t;
}

}  // namespace heightlab

#include <cmath>
#include <numbers>
#include <vector>

#include "heightlab/kernels.hpp"
#include "heightlab/numerics.hpp"

namespace heightlab::kernels {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double torus_mean(int dims, int n, const std::function<double(const double*)>& f) {
  if (dims == 0) return f(nullptr);
  long rows = 1;
  for (int l = 0; l + 1 < dims; ++l) rows *= n;
  std::vector<double> row_sums(rows);
#pragma omp parallel
  {
    std::vector<double> theta(dims);
    std::vector<double> vals(n);
#pragma omp for schedule(static)
    for (long row = 0; row < rows; ++row) {
      long rest = row;
      for (int l = dims - 2; l >= 0; --l) {
        theta[l] = kTwoPi * (static_cast<double>(rest % n) + 0.5) / n;
        rest /= n;
      }
      for (int j = 0; j < n; ++j) {
        theta[dims - 1] = kTwoPi * (j + 0.5) / n;
        vals[j] = f(theta.data());
      }
      row_sums[row] = pairwise_sum(vals);
    }
  }
  return pairwise_sum(row_sums) / (static_cast<double>(rows) * n);
}

double weyl_mean(int dims, long samples, const std::function<double(const double*)>& f) {
  if (dims == 0) return f(nullptr);
  // α_l = frac(sqrt(prime_l)).
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::vector<double> alpha(dims);
  for (int l = 0; l < dims; ++l) {
    const double s = std::sqrt(static_cast<double>(primes[l % 12])) * (1 + l / 12);
    alpha[l] = s - std::floor(s);
  }
  std::vector<double> vals(samples);
#pragma omp parallel
  {
    std::vector<double> theta(dims);
#pragma omp for schedule(static)
    for (long k = 0; k < samples; ++k) {
      for (int l = 0; l < dims; ++l) {
        const double u = (k + 1) * alpha[l];
        theta[l] = kTwoPi * (u - std::floor(u));
      }
      vals[k] = f(theta.data());
    }
  }
  return pairwise_sum(vals) / static_cast<double>(samples);
}

}  // namespace heightlab::kernels

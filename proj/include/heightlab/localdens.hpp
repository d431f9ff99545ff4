#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heightlab/variety.hpp"

namespace heightlab {

struct CountOptions {
  // Largest modulus p^r and the node budget of the lifting engine.
  std::uint64_t max_modulus = 1ULL << 40;
  std::uint64_t budget = 400'000'000;
};

// #X(Z/p^r): primitive solutions mod p^r divided by p^{r-1}(p-1).
BigInt count_projective_mod(const Variety& X, std::uint64_t p, int r, const CountOptions& opts = {});

// Exhaustive count of primitive affine solutions mod p^r (oracle; small cases).
BigInt count_primitive_affine_bruteforce(const Variety& X, std::uint64_t p, int r);

struct LocalDensity {
  std::uint64_t p = 0;
  int r_used = 0;
  BigInt count = 0;
  Rational mu_p = 0;
  bool stabilized = false;
  bool good_reduction = false;
  std::string method;
};

// p does not divide d * Π a_i.
bool good_reduction_diag(const DiagonalForm& f, std::uint64_t p);
// No point of X(F_p) where f and all partials vanish; diagonal and quadratic
// shortcuts, chart enumeration otherwise.
bool good_reduction(const Variety& X, std::uint64_t p, const CountOptions& opts = {});

LocalDensity local_density(const Variety& X, std::uint64_t p, int r_max = 6, const CountOptions& opts = {});

struct EulerFactor {
  std::uint64_t p = 0;
  double factor = 1.0;  // (1 - 1/p) μ_p
  LocalDensity density;
  bool flagged = false;
  std::string flag;
};

struct EulerProductReport {
  std::vector<EulerFactor> factors;
  std::vector<double> partial_products;
  std::uint64_t P_max = 0;
  std::string tail_note;
  double product() const { return partial_products.empty() ? 1.0 : partial_products.back(); }
};

EulerProductReport euler_product(const Variety& X, std::uint64_t P_max, int r_max = 6, const CountOptions& opts = {});

struct DeligneReport {
  std::uint64_t p = 0;
  BigInt count = 0;
  BigInt pi_n = 0;
  double deviation = 0.0;  // |count - π_n| / p^{n/2}
};
DeligneReport deligne_check(const Variety& X, std::uint64_t p);

std::vector<std::uint64_t> primes_up_to(std::uint64_t n);
bool is_prime(std::uint64_t n);

}  // namespace heightlab

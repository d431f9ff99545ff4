#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heightlab/core.hpp"
#include "heightlab/variety.hpp"

namespace heightlab {

/// A linear subvariety given by the common zeros of integer linear forms.
struct Exclusion {
  std::string name;
  std::vector<std::vector<std::int64_t>> forms;
  bool contains(const std::int64_t* x, int nvars) const;
};

struct ScanOptions {
  int shards = 0;  // 0: one per OpenMP thread
  bool sieve = true;
  std::uint64_t budget = 4'000'000'000ULL;  // prefix tuples
};

/// Counts of rational points by anticanonical height H = ||x||^k e^{λ/2}.
struct CountReport {
  std::vector<double> B_grid;
  std::vector<std::uint64_t> counts;
  std::vector<std::string> excluded;
  MetricSpec metric;
  int k = 1;  // -K = O(k)
  std::optional<double> theta_hat;
  std::optional<double> theta_stderr;
  int r_used = 0;
  bool partial = false;
  std::string note;
};

// B_i = B_max 2^{i-(G-1)}, i = 0..G-1.
std::vector<double> height_grid(double B_max, int G);

CountReport count_points(const Variety& X, const MetricSpec& metric, const std::vector<double>& B_grid,
                         const std::vector<Exclusion>& exclusions = {}, const ScanOptions& opts = {});

struct ThetaFit {
  double theta = 0.0;
  double stderr_rel = 0.0;
  bool misfit = false;
  int points_used = 0;
};
// Least squares N(B) ≈ Θ B (log B)^r over the tail half of the grid.
ThetaFit fit_theta(const std::vector<double>& B, const std::vector<std::uint64_t>& N, int r);
ThetaFit fit_theta(CountReport& report, int r);

enum class FieldChoice { Q, QI };

struct LocalCertificate {
  std::uint64_t p = 0;  // 0 for the real place
  int r = 0;
  std::string describe() const;
};

// Every place up to max_p with an obstruction (the real place first, then the
// least failing p^r per prime); local_obstruction returns the first.
std::vector<LocalCertificate> local_obstructions(const Variety& X, std::uint64_t max_p = 13, std::uint64_t max_modulus = 4096);
// A prime power modulus with no primitive solutions, or an empty real locus.
std::optional<LocalCertificate> local_obstruction(const Variety& X, std::uint64_t max_p = 13, std::uint64_t max_modulus = 4096);

struct MinPointReport {
  std::optional<std::vector<BigInt>> point;
  std::optional<std::vector<GaussianInt>> gaussian_point;
  double H_min = 0.0;
  double search_bound = 0.0;
  FieldChoice field = FieldChoice::Q;
  std::optional<LocalCertificate> certificate;
  std::vector<LocalCertificate> certificates;
  bool searched = false;
  std::string note;
  bool found() const { return point.has_value() || gaussian_point.has_value(); }
};

struct MinPointOptions {
  bool search_despite_certificate = false;
  std::uint64_t budget = 2'000'000'000ULL;
};

MinPointReport min_point(const Variety& X, const MetricSpec& metric, double B_cap, FieldChoice field = FieldChoice::Q,
                         const MinPointOptions& opts = {});

struct GrowthRow {
  BigInt a;
  std::optional<double> H_min;
  double a_root = 0.0;  // a^{1/d}
  std::optional<LocalCertificate> certificate;
};
struct GrowthTable {
  std::vector<GrowthRow> rows;
  std::optional<double> slope;  // log-log fit of H_min against a
  int fitted_rows = 0;
};
GrowthTable min_height_growth(int d, int n, const std::vector<BigInt>& a_grid, double B_cap);

}  // namespace heightlab

#pragma once

#include <optional>
#include <vector>

#include "heightlab/enumerate.hpp"
#include "heightlab/forms.hpp"
#include "heightlab/reports.hpp"

namespace heightlab {

// c_n = (1/2)(n+1)^{n+1}((n+1)H_n - n + log(π^n/n!)).
double c_n_constant(int n);

// h/(n+1)! + (vol/2) log μ_C against c_n/(n+1)!, vol = (-K)^n/n!.
InequalityReport main_conjecture_check(double h, double mu_C, double vol, int n, double error = 0.0);

// c_n - (d-1)(n+2-d)^n Σ log|a_i|.
double diagonal_bound_rhs(const DiagonalForm& X);

// e^{c_n/vol} / sqrt(μ_C); +inf once it leaves the double range.
double min_point_bound(double mu_C, double vol, int n);
// c_n/vol - (1/2) log μ_C.
double log_min_point_bound(double mu_C, double vol, int n);

struct ZhangReport {
  InequalityReport upper;  // ĥ <= e_1
  InequalityReport lower;  // mean(e) <= ĥ
  std::optional<InequalityReport> p1_upper;  // ĥ <= log(2π/μ_R)
  bool satisfied() const;
  bool violated() const;
};
ZhangReport zhang_report(const std::vector<double>& e, double h_hat, double error = 0.0,
                         std::optional<double> mu_R = std::nullopt);

struct FieldShape {
  int m_R = 1;
  int m_C = 0;
  int degree = 1;
  static FieldShape rationals() { return {1, 0, 1}; }
  static FieldShape gaussian() { return {0, 2, 2}; }
};

struct PeyreConstant {
  double theta = 0.0;
  double eta_part = 0.0;
  double mu_C = 0.0;
  double mu_R = 0.0;
  FieldShape shape;
};
// θ = η μ_C^{m_C/(2[F:Q])} μ_R^{m_R/[F:Q]}.
PeyreConstant peyre_assemble(double eta_part, double mu_C, double mu_R, FieldShape shape);

double ej_product(double min_H, double theta);

struct XaRow {
  BigInt a;
  std::optional<double> min_H;
  std::optional<LocalCertificate> certificate;
  double a_root = 0.0;         // a^{1/d}
  double mahler = 0.0;         // m(f_a)
  double exp_h_proxy = 0.0;    // exp(m / (d(n+1)))
  double bad_product = 1.0;    // Π_{p | da} μ_p
  double bad_cap = 1.0;        // 4^{#bad primes}
  bool bad_within_cap = true;
  double good_partial = 1.0;   // Π_{p <= P_max, p ∤ da} (1 - 1/p) μ_p
  std::vector<std::pair<std::uint64_t, double>> bad_factors;
};
struct XaStudy {
  int d = 0, n = 0;
  std::vector<XaRow> rows;
  std::optional<double> min_H_slope;
  std::optional<double> exp_h_slope;
};
struct XaOptions {
  double B_cap = 64;
  std::uint64_t P_max = 100;
  int r_max = 6;
};
XaStudy xa_study(int d, int n, const std::vector<BigInt>& a_grid, const XaOptions& opts = {});

}  // namespace heightlab

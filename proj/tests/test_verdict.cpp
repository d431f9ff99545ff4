#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "heightlab/localdens.hpp"
#include "heightlab/p1lab.hpp"
#include "heightlab/verdict.hpp"

using namespace heightlab;
using testing_util::diag;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Direct evaluation with a long double harmonic sum.
double cn_oracle(int n) {
  long double H = 0, lf = 0;
  for (int k = 1; k <= n; ++k) H += 1.0L / k, lf += std::log(static_cast<long double>(k));
  const long double pw = std::pow(static_cast<long double>(n + 1), n + 1);
  return static_cast<double>(0.5L * pw * ((n + 1) * H - n + n * std::log(static_cast<long double>(kPi)) - lf));
}

}  // namespace

TEST_CASE("c_n") {
  CHECK(c_n_constant(1) == doctest::Approx(2 * (1 + std::log(kPi))).epsilon(1e-15));
  CHECK(c_n_constant(1) == doctest::Approx(4.28946).epsilon(1e-6));
  CHECK(c_n_constant(2) == doctest::Approx(13.5 * (2.5 + std::log(kPi * kPi / 2))).epsilon(1e-14));
  CHECK(c_n_constant(2) == doctest::Approx(55.303).epsilon(1e-4));
  for (int n = 1; n <= 6; ++n) CHECK(c_n_constant(n) == doctest::Approx(cn_oracle(n)).epsilon(1e-13));
}

TEST_CASE("c_1 equals the volume-normalized FS height") {
  const auto psi = p1::Metric::fubini_study().anticanonical_shifted(std::log(kPi));
  CHECK(p1::metric_height_p1(psi).h_anticanonical == doctest::Approx(c_n_constant(1)).epsilon(1e-8));
}

TEST_CASE("main conjecture check") {
  const auto fs = main_conjecture_check(2, kPi, 2, 1, 1e-12);
  CHECK(fs.lhs == doctest::Approx(1 + std::log(kPi)).epsilon(1e-15));
  CHECK(std::abs(fs.slack) < 1e-14);
  CHECK(fs.verdict == Verdict::Inconclusive);
  const auto weil = main_conjecture_check(0, 2 * kPi, 2, 1);
  CHECK(weil.lhs == doctest::Approx(std::log(2 * kPi)).epsilon(1e-15));
  CHECK(weil.verdict == Verdict::Satisfied);
  const auto bad = main_conjecture_check(10, kPi, 2, 1);
  CHECK(bad.verdict == Verdict::Violated);
  // Shift λ: h gains (n+1)! vol λ/2, μ_C loses e^{-λ}.
  for (double lam : {-3.0, 0.4, 2.2}) {
    const auto s = main_conjecture_check(2 + 2 * lam, kPi * std::exp(-lam), 2, 1);
    CHECK(s.lhs == doctest::Approx(fs.lhs).epsilon(1e-14));
  }
}

TEST_CASE("diagonal bound") {
  CHECK(diagonal_bound_rhs(diag(1, 2, {5, 1, 7, 2})) == doctest::Approx(c_n_constant(2)).epsilon(1e-15));
  CHECK(diagonal_bound_rhs(diag(2, 2, {1, 1, 1, 1})) == doctest::Approx(c_n_constant(2)).epsilon(1e-15));
  CHECK(diagonal_bound_rhs(diag(2, 2, {2, 1, 1, 1})) == doctest::Approx(c_n_constant(2) - 4 * std::log(2.0)).epsilon(1e-14));
  CHECK(diagonal_bound_rhs(diag(2, 2, {3, 1, 1, 1})) < diagonal_bound_rhs(diag(2, 2, {2, 1, 1, 1})));
  CHECK(diagonal_bound_rhs(diag(3, 2, {1, -2, 1, 1})) < c_n_constant(2));
  CHECK_THROWS_AS(diagonal_bound_rhs(diag(4, 1, {1, 1, 1})), Error);
}

TEST_CASE("minimal point bound") {
  CHECK(min_point_bound(kPi, 2, 1) == doctest::Approx(std::exp(1.0) * std::sqrt(kPi)).epsilon(1e-14));
  CHECK(min_point_bound(kPi, 2, 1) == doctest::Approx(4.818).epsilon(1e-3));
  CHECK(min_point_bound(2 * kPi, 2, 1) == doctest::Approx(3.41).epsilon(1e-3));
  for (double lam : {-1.0, 2.0})
    CHECK(min_point_bound(kPi * std::exp(-lam), 2, 1) == doctest::Approx(min_point_bound(kPi, 2, 1) * std::exp(lam / 2)).epsilon(1e-14));
}

TEST_CASE("Zhang sandwich") {
  const auto w = zhang_report({0, 0}, 0);
  CHECK(w.upper.slack == 0.0);
  CHECK(w.lower.slack == 0.0);
  CHECK(w.satisfied());
  CHECK_FALSE(w.violated());
  const auto s = zhang_report({3, 1}, 2);
  CHECK(s.satisfied());
  CHECK(s.lower.slack == 0.0);
  CHECK(zhang_report({3, 1}, 3.5).violated());
  CHECK(zhang_report({3, 1}, 1.5).violated());
  const auto env = zhang_report({0.5, 0.2}, 0.3, 0, 4.0);
  REQUIRE(env.p1_upper.has_value());
  CHECK(env.p1_upper->rhs == doctest::Approx(std::log(2 * kPi / 4)).epsilon(1e-15));
  CHECK_THROWS_AS(zhang_report({1, 2}, 1), Error);
}

TEST_CASE("Peyre assembly") {
  const auto q = peyre_assemble(0.7, 5.0, 3.0, FieldShape::rationals());
  CHECK(q.theta == doctest::Approx(0.7 * 3.0).epsilon(1e-15));
  const auto g = peyre_assemble(0.7, 5.0, 3.0, FieldShape::gaussian());
  CHECK(g.theta == doctest::Approx(0.7 * std::sqrt(5.0)).epsilon(1e-15));
  CHECK_THROWS_AS(peyre_assemble(1, 1, 1, FieldShape{1, 1, 3}), Error);
  // Masses under a shift λ: μ_C e^{-λ}, μ_R e^{-λ/2}.
  for (double lam : {-1.0, 0.5}) {
    CHECK(peyre_assemble(0.7, 5.0 * std::exp(-lam), 3.0 * std::exp(-lam / 2), FieldShape::rationals()).theta ==
          doctest::Approx(q.theta * std::exp(-lam / 2)).epsilon(1e-14));
    CHECK(peyre_assemble(0.7, 5.0 * std::exp(-lam), 3.0, FieldShape::gaussian()).theta ==
          doctest::Approx(g.theta * std::exp(-lam / 2)).epsilon(1e-14));
  }
}

TEST_CASE("EJ product on P^1") {
  const auto e = euler_product(Variety::projective_space(1), 5000);
  CHECK(e.product() == doctest::Approx(6 / (kPi * kPi)).epsilon(1e-3));
  const double theta = peyre_assemble(e.product(), 2 * kPi, 4.0, FieldShape::rationals()).theta;
  CHECK(ej_product(1.0, theta) == doctest::Approx(24 / (kPi * kPi)).epsilon(1e-3));
}

TEST_CASE("X_a study") {
  XaOptions o;
  o.P_max = 30;
  const auto s = xa_study(4, 3, {BigInt(3), BigInt(21), BigInt(33)}, o);
  REQUIRE(s.rows.size() == 3);
  const auto& r3 = s.rows[0];
  // Bad primes of 4·3: μ_2 and μ_3 = 3^{-2}·4^2.
  bool saw3 = false;
  for (const auto& [p, mu] : r3.bad_factors) {
    CHECK(mu <= 4.0);
    if (p == 3) {
      saw3 = true;
      CHECK(mu == doctest::Approx(16.0 / 9).epsilon(1e-15));
    }
  }
  CHECK(saw3);
  CHECK(r3.bad_within_cap);
  CHECK(r3.exp_h_proxy == doctest::Approx(std::exp(r3.mahler / 16)).epsilon(1e-15));
  CHECK(s.rows[1].certificate.has_value());
  REQUIRE(s.min_H_slope.has_value());
  CHECK(*s.min_H_slope >= 0.15);
  REQUIRE(s.exp_h_slope.has_value());
  // Above a = 4 the Mahler measure is log a, so the proxy grows like a^{1/16}.
  const double slope_hi = (std::log(s.rows[2].exp_h_proxy) - std::log(s.rows[1].exp_h_proxy)) / std::log(33.0 / 21.0);
  CHECK(slope_hi == doctest::Approx(1.0 / 16).epsilon(1e-6));
}

TEST_CASE("log_min_point_bound past the double range") {
  CHECK(std::isinf(min_point_bound(1.0, 0.1, 4)));
  CHECK(log_min_point_bound(1.0, 0.1, 4) == doctest::Approx(10 * c_n_constant(4)).epsilon(1e-14));
  CHECK(log_min_point_bound(kPi, 2, 1) == doctest::Approx(std::log(min_point_bound(kPi, 2, 1))).epsilon(1e-14));
}

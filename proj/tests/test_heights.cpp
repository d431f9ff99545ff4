#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heightlab/heights.hpp"

using namespace heightlab;

namespace {

RationalPoint pt(std::initializer_list<Rational> v) { return normalize_point(v); }

GaussianPoint gpt(std::initializer_list<GaussianInt> v) { return normalize_gaussian(std::vector<GaussianInt>(v)); }

}  // namespace

TEST_CASE("Weil heights of rational points") {
  CHECK(point_height(pt({1, Rational(1, 2)}), MetricSpec::weil()).H == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(point_height(pt({1, Rational(1000, 1999)}), MetricSpec::weil()).H == doctest::Approx(1999.0).epsilon(1e-15));
  const auto h0 = point_height(pt({1, 0}), MetricSpec::weil());
  CHECK(h0.H == 1.0);
  CHECK(h0.h == 0.0);
}

TEST_CASE("Fubini-Study and L^p heights") {
  CHECK(point_height(pt({1, 1}), MetricSpec::fubini_study()).H == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(point_height(pt({3, 4}), MetricSpec::fubini_study()).H == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(point_height(pt({3, 4}), parse_metric("lp:1")).H == doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("heights of huge coordinates stay finite") {
  std::vector<BigInt> x{BigInt(1) << 4000, BigInt(3)};
  const auto h = point_height(normalize_point(x), MetricSpec::weil());
  CHECK(h.h == doctest::Approx(4000 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("Gaussian heights") {
  CHECK(gaussian_height(gpt({{1, 0}, {0, 1}}), MetricSpec::weil()).H == doctest::Approx(1.0));
  CHECK(gaussian_height(gpt({{1, 1}, {1, 0}}), MetricSpec::weil()).H == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  // Two conjugate embeddings, each weighted by its local degree 1 out of 2.
  const auto z = gpt({{1, 1}, {1, 0}});
  double acc = 0;
  for (int conj = 0; conj < 2; ++conj) {
    double mx = 0;
    for (const auto& c : z.coords()) mx = std::max(mx, std::hypot(c.re.convert_to<double>(), (conj ? -1 : 1) * c.im.convert_to<double>()));
    acc += std::log(mx) / 2;
  }
  CHECK(gaussian_height(z, MetricSpec::weil()).h == doctest::Approx(acc).epsilon(1e-15));
  for (long m = -7; m <= 7; ++m) {
    const double hq = point_height(pt({m, 1}), MetricSpec::weil()).H;
    const double hg = gaussian_height(gpt({{m, 0}, {1, 0}}), MetricSpec::weil()).H;
    CHECK(hq == doctest::Approx(std::max<double>(std::abs(m), 1)).epsilon(1e-15));
    CHECK(hg == doctest::Approx(hq).epsilon(1e-15));
  }
}

TEST_CASE("shift law") {
  auto [a, b] = height_shift_check(pt({1, 0}), MetricSpec::weil(), 2.0);
  CHECK(std::exp(a) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(a == b);
  std::tie(a, b) = height_shift_check(pt({2, 1}), MetricSpec::weil(), -2 * std::log(2.0));
  CHECK(std::abs(a) < 1e-15);
  CHECK(std::abs(b) < 1e-15);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> c(-1000, 1000);
  std::uniform_real_distribution<double> lam(-5, 5);
  for (int i = 0; i < 2000; ++i) {
    const Rational x = c(rng), y = c(rng), z = c(rng);
    if (x == 0 && y == 0 && z == 0) continue;
    const MetricSpec m = i % 2 ? MetricSpec::weil() : parse_metric("lp:3");
    const auto [u, v] = height_shift_check(pt({x, y, z}), m, lam(rng));
    CHECK(u == doctest::Approx(v).epsilon(1e-14));
  }
}

TEST_CASE("twisted metric requires P^1") {
  MetricSpec m = MetricSpec::weil();
  m.twist = FourierFunction{0.0, {0.5}, {}};
  CHECK_THROWS_AS(point_height(pt({1, 2, 3}), m), Error);
  CHECK_NOTHROW(point_height(pt({1, 2}), m));
}

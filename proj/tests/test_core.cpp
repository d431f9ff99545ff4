#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "heightlab/core.hpp"
#include "heightlab/forms.hpp"

using namespace heightlab;
using testing_util::diag;
using testing_util::form;

namespace {

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("normalize_point: gcd, denominators, sign") {
  CHECK(normalize_point(ints({2, 4, 6})).coords() == ints({1, 2, 3}));
  CHECK(normalize_point({Rational(1), Rational(1, 2)}).coords() == ints({2, 1}));
  CHECK(normalize_point(ints({0, -5})).coords() == ints({0, 1}));
  CHECK(normalize_point(ints({-3, 6, -9})).coords() == ints({1, -2, 3}));
  CHECK_THROWS_AS(normalize_point(ints({0, 0})), Error);
  try {
    normalize_point(ints({0, 0, 0}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AllZero);
  }
}

TEST_CASE("normalize_point agrees with a direct oracle on random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 12);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Rational> raw;
    for (int i = 0; i < 3; ++i) raw.push_back(Rational(num(rng), den(rng)));
    bool zero = true;
    for (auto& q : raw) zero = zero && q == 0;
    if (zero) continue;
    const auto pt = normalize_point(raw);
    const auto& c = pt.coords();
    BigInt g = 0;
    for (const auto& x : c) g = gcd(g, x);
    CHECK(g == 1);
    int first = 0;
    while (c[first] == 0) ++first;
    CHECK(c[first] > 0);
    // c is proportional to raw.
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(Rational(c[i]) * raw[j] == Rational(c[j]) * raw[i]);
  }
}

TEST_CASE("Gaussian normalization") {
  const GaussianInt one{1, 0}, two{2, 0}, opi{1, 1}, twoi{0, 2};
  // 2 = -i(1+i)^2, so the content of (1+i, 2) is 1+i.
  auto pt = normalize_gaussian(std::vector<GaussianInt>{opi, two});
  CHECK(pt.coords() == std::vector<GaussianInt>{one, {1, -1}});
  pt = normalize_gaussian(std::vector<GaussianInt>{opi, {3, 0}});
  CHECK(pt.coords() == std::vector<GaussianInt>{opi, {3, 0}});

  pt = normalize_gaussian(std::vector<GaussianInt>{twoi, two});
  // Oracle: divide by the content 2, then pick the unit multiple whose first
  // entry has re > 0 and im >= 0.
  const std::vector<GaussianInt> base{{0, 1}, {1, 0}};
  const GaussianInt units[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<GaussianInt> expect;
  for (const auto& u : units) {
    const GaussianInt f = u * base[0];
    if (f.re > 0 && f.im >= 0) expect = {f, u * base[1]};
  }
  CHECK(pt.coords() == expect);
  CHECK(pt.coords() == std::vector<GaussianInt>{one, {0, -1}});

  CHECK_THROWS_AS(normalize_gaussian(std::vector<GaussianInt>{{0, 0}, {0, 0}}), Error);
}

TEST_CASE("Gaussian gcd and canonical unit") {
  const GaussianInt a{3, 4}, b{1, 2};
  const GaussianInt g = gaussian_gcd(a * b, b * GaussianInt{2, -1});
  CHECK(gaussian_div_exact(a * b, g).has_value());
  CHECK(gaussian_div_exact(b * GaussianInt{2, -1}, g).has_value());
  const GaussianInt c = gaussian_canonical_unit(GaussianInt{-2, -3}) * GaussianInt{-2, -3};
  CHECK(c.re > 0);
  CHECK(c.im >= 0);
  CHECK(c.norm() == 13);
}

TEST_CASE("form evaluation") {
  const auto conic = form(3, {{{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, -1}});
  CHECK(conic.eval(ints({3, 4, 5})) == 0);
  CHECK(conic.eval(ints({1, 1, 1})) == 1);
  const auto X = diag(4, 4, {-2, 1, 1, 1, 1, 1});
  CHECK(X.eval(ints({1, 1, 1, 0, 0, 0})) == 0);
  CHECK(X.to_form().eval(ints({1, 1, 1, 0, 0, 0})) == 0);

  const CompiledForm cf(conic);
  const std::int64_t x[] = {3, 4, 5}, y[] = {7, -2, 1};
  CHECK(cf.eval(x) == 0);
  CHECK(cf.eval(y) == 52);
  const auto cm = cf.coeffs_mod(11);
  const std::uint64_t ym[] = {7, 9, 1};
  CHECK(cf.eval_mod(ym, cm, 11) == 52 % 11);
}

TEST_CASE("form construction rejects inhomogeneous or empty input") {
  CHECK_THROWS_AS(form(2, {{{2, 0}, 1}, {{0, 1}, 1}}), Error);
  CHECK_THROWS_AS(form(2, {{{1, 1}, 0}}), Error);
  CHECK_THROWS_AS(diag(3, 2, {1, 1}), Error);
}

TEST_CASE("derivatives and diagonal detection") {
  const auto f = form(3, {{{3, 0, 0}, 2}, {{0, 3, 0}, 1}, {{0, 0, 3}, -5}});
  const auto dc = f.diagonal_coefficients();
  REQUIRE(dc.has_value());
  CHECK(*dc == ints({2, 1, -5}));
  const auto df = f.derivative(0);
  REQUIRE(df.has_value());
  CHECK(df->eval(ints({1, 7, 9})) == 6);
  CHECK_FALSE(form(3, {{{1, 1, 0}, 1}, {{0, 0, 2}, -1}}).diagonal_coefficients().has_value());
}

TEST_CASE("lp norms") {
  const double one_one[] = {1, 1}, three_four[] = {3, 4};
  CHECK(lp_norm(one_one, INFINITY) == 1.0);
  CHECK(lp_norm(one_one, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(lp_norm(three_four, 2) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(lp_norm(three_four, 1) == doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("metric parsing") {
  CHECK(parse_metric("weil").is_weil());
  CHECK(parse_metric("fs").p == 2.0);
  CHECK(parse_metric("lp:3").p == 3.0);
  CHECK_THROWS_AS(parse_metric("lp:0.5"), Error);
  CHECK_THROWS_AS(parse_metric("banana"), Error);
}

TEST_CASE("rational and Gaussian parsing") {
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  const auto z = parse_gaussian("1/2+3i");
  CHECK(z.re == Rational(1, 2));
  CHECK(z.im == Rational(3));
  CHECK(parse_gaussian("-i").im == Rational(-1));
}

#pragma once

// Exact arithmetic foundation: primitive projective points over Z and Z[i],
// and the ambient metric description shared by the other modules.

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "heightlab/error.hpp"
#include "heightlab/fourier.hpp"

namespace heightlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt gcd(const BigInt& a, const BigInt& b);
long double to_long_double(const BigInt& x);
// Natural log of |x| for x != 0, valid far beyond the double range.
long double log_abs(const BigInt& x);
Rational parse_rational(const std::string& text);

/// Primitive integer representative of a point of P^m(Q).
///
/// Invariants: not all coordinates zero, gcd of the coordinates is 1 and the
/// first nonzero coordinate is positive. Instances are only produced by
/// normalize_point, so every RationalPoint is canonical.
class RationalPoint {
 public:
  const std::vector<BigInt>& coords() const { return coords_; }
  std::size_t ambient_dim() const { return coords_.size() - 1; }
  std::string to_string() const;

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;

 private:
  friend RationalPoint normalize_point(std::span<const Rational> raw);
  explicit RationalPoint(std::vector<BigInt> coords) : coords_(std::move(coords)) {}
  std::vector<BigInt> coords_;
};

// Clears denominators, divides by the gcd and makes the first nonzero entry
// positive. Throws AllZero.
RationalPoint normalize_point(std::span<const Rational> raw);
RationalPoint normalize_point(std::span<const BigInt> raw);
RationalPoint normalize_point(std::initializer_list<Rational> raw);

struct GaussianInt {
  BigInt re{0};
  BigInt im{0};

  bool is_zero() const { return re == 0 && im == 0; }
  BigInt norm() const { return re * re + im * im; }
  GaussianInt conj() const { return {re, -im}; }
  std::string to_string() const;

  friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
  friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

struct GaussianRational {
  Rational re{0};
  Rational im{0};
};

// Euclidean division in Z[i] with nearest-integer quotient.
GaussianInt gaussian_div_round(const GaussianInt& a, const GaussianInt& b);
std::optional<GaussianInt> gaussian_div_exact(const GaussianInt& a, const GaussianInt& b);
GaussianInt gaussian_gcd(GaussianInt a, GaussianInt b);
// The unit u with u*z in the class re > 0, im >= 0.
GaussianInt gaussian_canonical_unit(const GaussianInt& z);
GaussianRational parse_gaussian(const std::string& text);

/// Primitive Z[i] representative of a point of P^m(Q(i)).
///
/// Invariants: not all zero, coordinates have unit gcd in Z[i], first nonzero
/// coordinate has positive real part and nonnegative imaginary part.
class GaussianPoint {
 public:
  const std::vector<GaussianInt>& coords() const { return coords_; }
  std::size_t ambient_dim() const { return coords_.size() - 1; }
  std::string to_string() const;

  friend bool operator==(const GaussianPoint&, const GaussianPoint&) = default;

 private:
  friend GaussianPoint normalize_gaussian(std::span<const GaussianRational> raw);
  explicit GaussianPoint(std::vector<GaussianInt> coords) : coords_(std::move(coords)) {}
  std::vector<GaussianInt> coords_;
};

GaussianPoint normalize_gaussian(std::span<const GaussianRational> raw);
GaussianPoint normalize_gaussian(std::span<const GaussianInt> raw);

/// Ambient L^p metric on O(1), optionally twisted on P^1 by the harmonic
/// extension of a Fourier function, plus an additive weight shift.
///
/// p = infinity is the Weil metric, p = 2 Fubini-Study.
struct MetricSpec {
  double p = std::numeric_limits<double>::infinity();
  double shift = 0.0;
  std::optional<FourierFunction> twist;

  static MetricSpec weil(double shift = 0.0) { return {std::numeric_limits<double>::infinity(), shift, {}}; }
  static MetricSpec fubini_study(double shift = 0.0) { return {2.0, shift, {}}; }
  bool is_weil() const { return p == std::numeric_limits<double>::infinity(); }
  MetricSpec shifted(double lambda) const {
    MetricSpec m = *this;
    m.shift += lambda;
    return m;
  }
  std::string name() const;
};

// Parses "weil", "fs" or "lp:<p>".
MetricSpec parse_metric(const std::string& text);

double lp_norm(std::span<const std::complex<double>> x, double p);
double lp_norm(std::span<const double> x, double p);

}  // namespace heightlab

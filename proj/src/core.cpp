#include "heightlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace heightlab {

namespace mp = boost::multiprecision;

BigInt gcd(const BigInt& a, const BigInt& b) { return mp::gcd(a, b); }

long double to_long_double(const BigInt& x) { return x.convert_to<long double>(); }

long double log_abs(const BigInt& x) {
  if (x == 0) throw Error(ErrorKind::InvalidInput, "log of zero");
  const BigInt ax = mp::abs(x);
  const std::size_t bits = mp::msb(ax);
  if (bits < 1000) return std::log(to_long_double(ax));
  const std::size_t drop = bits - 64;
  const BigInt top = ax >> drop;
  return std::log(to_long_double(top)) + static_cast<long double>(drop) * std::log(2.0L);
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty number");
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
      if (s.find_first_of(".eE") != std::string::npos) {
        // Decimal input is taken literally: 0.25 -> 1/4.
        const auto dot = s.find('.');
        if (s.find_first_of("eE") != std::string::npos)
          throw Error(ErrorKind::InvalidInput, "exponent notation not supported in exact input: " + s);
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const std::size_t frac = s.size() - dot - 1;
        if (digits == "-" || digits == "+" || digits.empty()) digits += "0";
        BigInt denom = mp::pow(BigInt(10), static_cast<unsigned>(frac));
        return Rational(BigInt(digits), denom);
      }
      return Rational(BigInt(s));
    }
    const BigInt num(s.substr(0, slash));
    const BigInt den(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in " + s);
    return Rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidInput, "cannot parse rational '" + text + "'");
  }
}

std::string RationalPoint::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) out << (i ? ":" : "") << coords_[i];
  out << ')';
  return out.str();
}

RationalPoint normalize_point(std::span<const Rational> raw) {
  if (raw.empty()) throw Error(ErrorKind::DimensionMismatch, "point with no coordinates");
  BigInt lcm = 1;
  bool all_zero = true;
  for (const auto& q : raw) {
    if (q != 0) all_zero = false;
    const BigInt den = mp::denominator(q);
    lcm = lcm / gcd(lcm, den) * den;
  }
  if (all_zero) throw Error(ErrorKind::AllZero, "all coordinates are zero");
  std::vector<BigInt> ints;
  ints.reserve(raw.size());
  for (const auto& q : raw) ints.push_back(mp::numerator(q) * (lcm / mp::denominator(q)));
  BigInt g = 0;
  for (const auto& x : ints) g = gcd(g, x);
  const auto first = std::find_if(ints.begin(), ints.end(), [](const BigInt& x) { return x != 0; });
  if (*first < 0) g = -g;
  for (auto& x : ints) x /= g;
  return RationalPoint(std::move(ints));
}

RationalPoint normalize_point(std::span<const BigInt> raw) {
  std::vector<Rational> q(raw.begin(), raw.end());
  return normalize_point(std::span<const Rational>(q));
}

RationalPoint normalize_point(std::initializer_list<Rational> raw) {
  return normalize_point(std::span<const Rational>(raw.begin(), raw.size()));
}

std::string MetricSpec::name() const {
  std::string base;
  if (is_weil())
    base = "weil";
  else if (p == 2.0)
    base = "fs";
  else {
    std::ostringstream out;
    out << "lp:" << p;
    base = out.str();
  }
  return base;
}

MetricSpec parse_metric(const std::string& text) {
  if (text == "weil" || text == "inf" || text == "lp:inf") return MetricSpec::weil();
  if (text == "fs") return MetricSpec::fubini_study();
  if (text.rfind("lp:", 0) == 0) {
    double p = 0;
    try {
      p = std::stod(text.substr(3));
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput, "bad metric '" + text + "'");
    }
    if (!(p >= 1.0)) throw Error(ErrorKind::InvalidInput, "L^p exponent must be >= 1");
    MetricSpec m;
    m.p = p;
    return m;
  }
  throw Error(ErrorKind::InvalidInput, "unknown metric '" + text + "' (expected weil|fs|lp:p)");
}

namespace {

template <class Abs>
double lp_norm_impl(std::size_t n, Abs abs_at, double p) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, abs_at(i));
  if (m == 0.0 || std::isinf(p)) return m;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::pow(abs_at(i) / m, p);
  return m * std::pow(s, 1.0 / p);
}

}  // namespace

double lp_norm(std::span<const std::complex<double>> x, double p) {
  return lp_norm_impl(x.size(), [&](std::size_t i) { return std::abs(x[i]); }, p);
}

double lp_norm(std::span<const double> x, double p) {
  return lp_norm_impl(x.size(), [&](std::size_t i) { return std::abs(x[i]); }, p);
}

}  // namespace heightlab

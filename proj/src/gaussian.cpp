#include <algorithm>
#include <sstream>

#include "heightlab/core.hpp"

namespace heightlab {

namespace mp = boost::multiprecision;

namespace {

// floor(n / d) for d > 0.
BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt q = n / d;
  if (q * d > n) q -= 1;
  return q;
}

BigInt round_div(const BigInt& n, const BigInt& d) { return floor_div(2 * n + d, 2 * d); }

}  // namespace

std::string GaussianInt::to_string() const {
  std::ostringstream out;
  if (im == 0) {
    out << re;
  } else if (re == 0) {
    if (im == 1)
      out << "i";
    else if (im == -1)
      out << "-i";
    else
      out << im << "i";
  } else {
    out << re << (im > 0 ? "+" : "-");
    const BigInt a = mp::abs(im);
    if (a != 1) out << a;
    out << "i";
  }
  return out.str();
}

GaussianInt gaussian_div_round(const GaussianInt& a, const GaussianInt& b) {
  const BigInt n = b.norm();
  if (n == 0) throw Error(ErrorKind::InvalidInput, "division by zero in Z[i]");
  const GaussianInt num = a * b.conj();
  return {round_div(num.re, n), round_div(num.im, n)};
}

std::optional<GaussianInt> gaussian_div_exact(const GaussianInt& a, const GaussianInt& b) {
  const BigInt n = b.norm();
  if (n == 0) return std::nullopt;
  const GaussianInt num = a * b.conj();
  if (num.re % n != 0 || num.im % n != 0) return std::nullopt;
  return GaussianInt{num.re / n, num.im / n};
}

GaussianInt gaussian_gcd(GaussianInt a, GaussianInt b) {
  while (!b.is_zero()) {
    const GaussianInt q = gaussian_div_round(a, b);
    GaussianInt r = a - q * b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

GaussianInt gaussian_canonical_unit(const GaussianInt& z) {
  if (z.is_zero()) return z;
  static const GaussianInt units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& u : units) {
    GaussianInt w = u * z;
    if (w.re > 0 && w.im >= 0) return u;
  }
  return units[0];  // unreachable for nonzero z
}

GaussianRational parse_gaussian(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty Gaussian number");
  if (s.back() != 'i') return {parse_rational(s), 0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "0" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  if (im_part.front() == '+') im_part.erase(0, 1);
  return {parse_rational(re_part), parse_rational(im_part)};
}

std::string GaussianPoint::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) out << (i ? ":" : "") << coords_[i].to_string();
  out << ')';
  return out.str();
}

GaussianPoint normalize_gaussian(std::span<const GaussianRational> raw) {
  if (raw.empty()) throw Error(ErrorKind::DimensionMismatch, "point with no coordinates");
  BigInt lcm = 1;
  bool all_zero = true;
  for (const auto& z : raw) {
    if (z.re != 0 || z.im != 0) all_zero = false;
    for (const Rational* q : {&z.re, &z.im}) {
      const BigInt den = mp::denominator(*q);
      lcm = lcm / gcd(lcm, den) * den;
    }
  }
  if (all_zero) throw Error(ErrorKind::AllZero, "all coordinates are zero");
  std::vector<GaussianInt> ints;
  ints.reserve(raw.size());
  for (const auto& z : raw)
    ints.push_back({mp::numerator(z.re) * (lcm / mp::denominator(z.re)),
                    mp::numerator(z.im) * (lcm / mp::denominator(z.im))});
  GaussianInt g{0, 0};
  for (const auto& z : ints) g = gaussian_gcd(g, z);
  for (auto& z : ints) z = *gaussian_div_exact(z, g);
  const auto first = std::find_if(ints.begin(), ints.end(), [](const GaussianInt& z) { return !z.is_zero(); });
  const GaussianInt u = gaussian_canonical_unit(*first);
  for (auto& z : ints) z = u * z;
  return GaussianPoint(std::move(ints));
}

GaussianPoint normalize_gaussian(std::span<const GaussianInt> raw) {
  std::vector<GaussianRational> q;
  q.reserve(raw.size());
  for (const auto& z : raw) q.push_back({Rational(z.re), Rational(z.im)});
  return normalize_gaussian(std::span<const GaussianRational>(q));
}

}  // namespace heightlab

#include "heightlab/heights.hpp"

#include <cmath>
#include <numbers>

namespace heightlab {

namespace mp = boost::multiprecision;

namespace {

// Twist contribution u(z)/2 at the point (x0 : x1) of P^1, where u is the
// harmonic extension of the Fourier data inside the unit disc and its
// reflection z -> 1/conj(z) outside.
double twist_term(const FourierFunction& u, long double re0, long double im0, long double re1, long double im1) {
  const std::complex<long double> x0(re0, im0), x1(re1, im1);
  const long double m0 = std::abs(x0), m1 = std::abs(x1);
  if (m0 == 0) return 0.5 * u.a0;
  const std::complex<long double> z = x1 / x0;
  const double theta = static_cast<double>(std::arg(z));
  const double r = static_cast<double>(m1 <= m0 ? m1 / m0 : m0 / m1);
  return 0.5 * u.extension(r, theta);
}

void require_twist_dim(const std::optional<FourierFunction>& twist, std::size_t dim) {
  if (twist && dim != 1)
    throw Error(ErrorKind::DimensionMismatch, "twisted metrics are defined on P^1 only");
}

}  // namespace

double log_lp_norm(std::span<const BigInt> x, double p) {
  BigInt M = 0;
  for (const auto& v : x) M = std::max(M, BigInt(mp::abs(v)));
  if (M == 0) throw Error(ErrorKind::AllZero, "norm of the zero vector");
  const long double logM = log_abs(M);
  if (std::isinf(p)) return static_cast<double>(logM);
  // Scale everything by 2^-shift so the ratios are representable.
  const std::size_t bits = mp::msb(M);
  const std::size_t shift = bits > 60 ? bits - 60 : 0;
  const long double Ms = to_long_double(M >> shift);
  long double s = 0;
  for (const auto& v : x) {
    const long double r = to_long_double(BigInt(mp::abs(v)) >> shift) / Ms;
    s += std::pow(r, static_cast<long double>(p));
  }
  return static_cast<double>(logM + std::log(s) / p);
}

PointHeight point_height(const RationalPoint& x, const MetricSpec& metric) {
  require_twist_dim(metric.twist, x.ambient_dim());
  const auto& c = x.coords();
  double h = log_lp_norm(c, metric.p);
  double extra = 0.0;
  if (metric.twist) extra = twist_term(*metric.twist, to_long_double(c[0]), 0, to_long_double(c[1]), 0);
  h = (h + extra) + metric.shift / 2;
  double H = std::exp(h);
  if (metric.is_weil() && metric.shift == 0.0 && !metric.twist) {
    BigInt M = 0;
    for (const auto& v : c) M = std::max(M, BigInt(mp::abs(v)));
    H = M.convert_to<double>();
  }
  return {h, H, metric};
}

PointHeight gaussian_height(const GaussianPoint& x, const MetricSpec& metric) {
  require_twist_dim(metric.twist, x.ambient_dim());
  const auto& c = x.coords();
  std::vector<double> moduli;
  moduli.reserve(c.size());
  for (const auto& z : c) moduli.push_back(std::sqrt(z.norm().convert_to<double>()));
  double h = std::log(lp_norm(std::span<const double>(moduli), metric.p));
  double extra = 0.0;
  if (metric.twist)
    extra = twist_term(*metric.twist, to_long_double(c[0].re), to_long_double(c[0].im), to_long_double(c[1].re),
                       to_long_double(c[1].im));
  h = (h + extra) + metric.shift / 2;
  return {h, std::exp(h), metric};
}

std::pair<double, double> height_shift_check(const RationalPoint& x, const MetricSpec& metric, double lambda) {
  const double shifted = point_height(x, metric.shifted(lambda)).h;
  const double base = point_height(x, metric).h;
  return {shifted, base + lambda / 2};
}

}  // namespace heightlab

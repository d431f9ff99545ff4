#include "heightlab/p1lab.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "heightlab/error.hpp"

namespace heightlab::p1 {

namespace {

constexpr double kPi = std::numbers::pi;

// t = (r²-1)/(r²+1) seen from the disc chart: ρ = r on chart 0, ρ = 1/r on chart 1.
double chart_t(int chart, double rho) {
  const double t = (rho * rho - 1.0) / (rho * rho + 1.0);
  return chart == 0 ? t : -t;
}

double chart_dt(int chart, double rho) {
  const double s = 1.0 + rho * rho;
  const double dt = 4.0 * rho / (s * s);
  return chart == 0 ? dt : -dt;
}

int angular_nodes(int order) {
  if (order == 0) return 1;
  int n = 16;
  while (n < 4 * order + 4) n *= 2;
  return n;
}

// Runs `eval(n_r, n_theta)` with doubling node counts until two successive
// values agree to `tol`.
template <class Eval>
Estimate converge(Eval eval, int order, const QuadratureOptions& opts, const char* what) {
  int nr = std::max(4, opts.initial_nodes);
  int nt = angular_nodes(order);
  double prev = eval(nr, nt);
  while (true) {
    const int nr2 = 2 * nr;
    const int nt2 = nt == 1 ? 1 : 2 * nt;
    const double cur = eval(nr2, nt2);
    const double diff = std::abs(cur - prev);
    if (diff <= opts.tol) return {cur, diff, static_cast<long>(nr2) * nt2 * 2, "gauss-legendre x trapezoid"};
    if (nr2 > opts.max_nodes)
      throw Error(ErrorKind::QuadratureFailure, std::string(what) + ": no convergence to tolerance " +
                                                    std::to_string(opts.tol) + " (last change " +
                                                    std::to_string(diff) + ")");
    prev = cur;
    nr = nr2;
    nt = nt2;
  }
}

// Σ over both disc charts of ∫∫ f(chart, ρ, θ) ρ dρ dθ on an n_r x n_t grid.
template <class F>
double disc_integral(int nr, int nt, F f) {
  const GaussRule rule = gauss_legendre(nr, 0.0, 1.0);
  const std::vector<double> angles = trapezoid_angles(nt);
  const double dtheta = 2.0 * kPi / nt;
  std::vector<double> per_node(2 * static_cast<std::size_t>(nr));
#pragma omp parallel for schedule(static)
  for (int idx = 0; idx < 2 * nr; ++idx) {
    const int chart = idx / nr;
    const int i = idx % nr;
    const double rho = rule.nodes[i];
    double s = 0.0;
    for (int j = 0; j < nt; ++j) s += f(chart, rho, angles[j]);
    per_node[idx] = s * rule.weights[i] * rho * dtheta;
  }
  return pairwise_sum(per_node);
}

}  // namespace

double RadialProfile::value(double t) const {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k];
  return v;
}

double RadialProfile::derivative(double t) const {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) v = v * t + static_cast<double>(k) * c[k];
  return v;
}

double Metric::chart_perturbation(int chart, double rho, double theta) const {
  double u = 0.0;
  if (!radial.empty()) u += radial.value(chart_t(chart, rho));
  if (harmonic) u += harmonic->extension(rho, theta);
  return u;
}

double Metric::chart_weight(int chart, double rho, double theta) const {
  const double b = base == Base::FubiniStudy ? std::log1p(rho * rho) : 0.0;
  return b + chart_perturbation(chart, rho, theta);
}

void Metric::chart_perturbation_gradient(int chart, double rho, double theta, double& dr, double& dt) const {
  dr = 0.0;
  dt = 0.0;
  if (!radial.empty()) dr += radial.derivative(chart_t(chart, rho)) * chart_dt(chart, rho);
  if (harmonic) {
    double hr = 0.0, ht = 0.0;
    harmonic->extension_gradient(rho, theta, hr, ht);
    dr += hr;
    dt += ht;
  }
}

void Metric::chart_weight_gradient(int chart, double rho, double theta, double& dr, double& dt) const {
  chart_perturbation_gradient(chart, rho, theta, dr, dt);
  if (base == Base::FubiniStudy) dr += 2.0 * rho / (1.0 + rho * rho);
}

EnergyReport energy_E(const Metric& phi, const Metric& phi0, const QuadratureOptions& opts) {
  // E = -(1/8π)∫|∇w|² + ∫ w dd^c φ0,  w = φ - φ0, and
  // ∫ w dd^c φ0 = ∫ w dμ_base0 - (1/4π)∫ ∇w·∇u0.
  const int order = std::max(phi.angular_order(), phi0.angular_order());
  auto eval = [&](int nr, int nt) {
    double area = disc_integral(nr, nt, [&](int chart, double rho, double theta) {
      double g1r, g1t, g0r, g0t, u0r, u0t;
      phi.chart_weight_gradient(chart, rho, theta, g1r, g1t);
      phi0.chart_weight_gradient(chart, rho, theta, g0r, g0t);
      phi0.chart_perturbation_gradient(chart, rho, theta, u0r, u0t);
      const double gr = g1r - g0r, gt = g1t - g0t;
      double val = -(gr * gr + gt * gt) / (8.0 * kPi) - (gr * u0r + gt * u0t) / (4.0 * kPi);
      if (phi0.base == Base::FubiniStudy) {
        const double w = phi.chart_weight(chart, rho, theta) - phi0.chart_weight(chart, rho, theta);
        const double s = 1.0 + rho * rho;
        val += w / (kPi * s * s);
      }
      return val;
    });
    if (phi0.base == Base::Weil) {
      const std::vector<double> angles = trapezoid_angles(nt);
      std::vector<double> vals(nt);
      for (int j = 0; j < nt; ++j)
        vals[j] = phi.chart_weight(0, 1.0, angles[j]) - phi0.chart_weight(0, 1.0, angles[j]);
      area += pairwise_sum(vals) / nt;
    }
    return area;
  };
  const Estimate e = converge(eval, order, opts, "energy_E");
  return {e.value + (phi.shift - phi0.shift), e.nodes, e.est_error};
}

HeightReport metric_height_p1(const Metric& psi, const QuadratureOptions& opts) {
  const EnergyReport e = energy_E(psi, Metric::weil(), opts);
  HeightReport r;
  r.h_O1 = e.value;
  r.h_anticanonical = 4.0 * e.value;
  r.h_normalized = r.h_anticanonical / 4.0;  // (n+1)! vol(-K) = 2 * 2
  r.est_error = 4.0 * e.est_error;
  r.nodes = e.quadrature_nodes;
  return r;
}

Estimate complex_mass_p1(const Metric& psi, const QuadratureOptions& opts) {
  auto eval = [&](int nr, int nt) {
    return disc_integral(nr, nt, [&](int chart, double rho, double theta) {
      return std::exp(-2.0 * psi.chart_weight(chart, rho, theta));
    });
  };
  Estimate e = converge(eval, psi.angular_order(), opts, "complex_mass_p1");
  const double scale = std::exp(-2.0 * psi.shift);
  e.value *= scale;
  e.est_error *= scale;
  return e;
}

Estimate real_mass_p1(const Metric& psi, const QuadratureOptions& opts) {
  auto eval = [&](int nr, int) {
    const GaussRule rule = gauss_legendre(nr, 0.0, 1.0);
    std::vector<double> vals(4 * static_cast<std::size_t>(nr));
    for (int chart = 0; chart < 2; ++chart)
      for (int side = 0; side < 2; ++side) {
        const double theta = side == 0 ? 0.0 : kPi;
        for (int i = 0; i < nr; ++i)
          vals[(chart * 2 + side) * nr + i] = rule.weights[i] * std::exp(-psi.chart_weight(chart, rule.nodes[i], theta));
      }
    return pairwise_sum(vals);
  };
  Estimate e = converge(eval, 0, opts, "real_mass_p1");
  e.method = "gauss-legendre";
  const double scale = std::exp(-psi.shift);
  e.value *= scale;
  e.est_error *= scale;
  return e;
}

Estimate ding_arith(const Metric& psi, const QuadratureOptions& opts) {
  const HeightReport h = metric_height_p1(psi, opts);
  const Estimate mass = complex_mass_p1(psi, opts);
  // n = 1: -2h/(n+1)! - vol log μ with vol(-K) = 2.
  const double value = -h.h_anticanonical - 2.0 * std::log(mass.value);
  const double err = h.est_error + 2.0 * mass.est_error / mass.value;
  return {value, err, h.nodes + mass.nodes, "energy + complex mass"};
}

InequalityReport real_theorem_functional(const Metric& psi, const QuadratureOptions& opts) {
  const HeightReport h = metric_height_p1(psi, opts);
  const Estimate mass = real_mass_p1(psi, opts);
  const double lhs = h.h_normalized + std::log(mass.value);
  const double err = h.est_error / 4.0 + mass.est_error / mass.value;
  auto r = InequalityReport::compare(lhs, std::log(2.0 * kPi), err,
                                     {{"h_normalized", std::to_string(h.h_normalized)},
                                      {"real_mass", std::to_string(mass.value)}});
  r.note = "maximum over conjugation-invariant psh metrics is log(2π)";
  return r;
}

double dirichlet_energy(const FourierFunction& v) {
  double s = 0.0;
  const int K = v.order();
  for (int k = 1; k <= K; ++k) {
    const double ak = k <= static_cast<int>(v.a.size()) ? v.a[k - 1] : 0.0;
    const double bk = k <= static_cast<int>(v.b.size()) ? v.b[k - 1] : 0.0;
    s += k * (ak * ak + bk * bk);
  }
  return 0.5 * s;
}

Estimate mt_functional(const FourierFunction& v, double tol) {
  const int K = v.order();
  int n = 64;
  while (n < 4 * K + 8) n *= 2;
  auto log_mean_exp = [&](int nodes) {
    const std::vector<double> angles = trapezoid_angles(nodes);
    std::vector<double> vals(nodes);
    double vmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < nodes; ++j) {
      vals[j] = v.value(angles[j]);
      vmin = std::min(vmin, vals[j]);
    }
    for (double& x : vals) x = std::exp(-(x - vmin));
    return -vmin + std::log(pairwise_sum(vals) / nodes);
  };
  double prev = log_mean_exp(n);
  while (true) {
    n *= 2;
    const double cur = log_mean_exp(n);
    const double diff = std::abs(cur - prev);
    if (diff <= std::max(tol, 4e-16 * std::abs(cur))) {
      const double value = -0.5 * dirichlet_energy(v) + v.a0 + cur;
      return {value, diff, n, "spectral dirichlet + trapezoid"};
    }
    if (n > (1 << 22)) throw Error(ErrorKind::QuadratureFailure, "mt_functional: trapezoid rule did not converge");
    prev = cur;
  }
}

FourierFunction mobius_equality_family(double t) {
  if (!(std::abs(t) < 1.0)) throw Error(ErrorKind::ParameterOutOfRange, "Möbius parameter must satisfy |t| < 1");
  FourierFunction v;
  if (t == 0.0) return v;
  // e^{-v} = (1-t²)/|1 - t e^{iθ}|², log|1 - t e^{iθ}|² = -2 Σ t^k cos kθ / k.
  v.a0 = -std::log1p(-t * t);
  const int K = static_cast<int>(std::ceil(std::log(1e-13) / std::log(std::abs(t)))) + 1;
  double tk = 1.0;
  for (int k = 1; k <= K; ++k) {
    tk *= t;
    v.a.push_back(-2.0 * tk / k);
    v.b.push_back(0.0);
  }
  return v;
}

RotationReport su2_rotation_check() {
  RotationReport report;
  using cd = std::complex<double>;
  const cd I(0.0, 1.0);
  // x(θ) = T^{-1}(e^{iθ}) = (w - i)/(1 - i w) and dx/dθ = 2i e^{iθ}/(1 - i e^{iθ})².
  auto x_of = [&](double theta) {
    const cd w = std::exp(I * theta);
    return ((w - I) / (1.0 - I * w)).real();
  };
  auto dx_of = [&](double theta) {
    const cd w = std::exp(I * theta);
    const cd d = 2.0 * I * w / ((1.0 - I * w) * (1.0 - I * w));
    return std::abs(d);
  };
  const int nt = 4096;
  for (int j = 0; j < nt; ++j) {
    const double theta = 2.0 * kPi * (j + 0.5) / nt;
    const double x = x_of(theta);
    report.max_measure_deviation = std::max(report.max_measure_deviation, std::abs(dx_of(theta) / (1.0 + x * x) - 0.5));
  }

  struct Case {
    const char* name;
    RadialProfile u;
  };
  const std::vector<Case> battery = {
      {"u = 0", {}},
      {"u = 1.3", {{1.3}}},
      {"radial bump 0.5(1-t²)²", {{0.5, 0.0, -1.0, 0.0, 0.5}}},
      {"odd profile 0.3t + 0.2t³", {{0.0, 0.3, 0.0, 0.2}}},
      {"profile -0.7 + 0.4t - 0.25t²", {{-0.7, 0.4, -0.25}}},
  };
  for (const auto& c : battery) {
    Metric psi = Metric::fubini_study();
    psi.radial = c.u;
    const double lhs = real_mass_p1(psi, {1e-13, 16, 4096}).value;
    // u as a function of the real coordinate, t = (x²-1)/(x²+1).
    std::vector<double> vals(nt);
    for (int j = 0; j < nt; ++j) {
      const double theta = 2.0 * kPi * (j + 0.5) / nt;
      const double x = x_of(theta);
      const double t = std::isfinite(x) ? (x * x - 1.0) / (x * x + 1.0) : 1.0;
      vals[j] = std::exp(-c.u.value(t));
    }
    const double rhs = 0.5 * pairwise_sum(vals) * (2.0 * kPi / nt);
    report.cases.push_back({c.name, lhs, rhs});
    report.max_deviation = std::max(report.max_deviation, std::abs(lhs - rhs));
  }
  return report;
}

}  // namespace heightlab::p1

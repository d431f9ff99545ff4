#include "heightlab/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "heightlab/localdens.hpp"
#include "heightlab/mahler.hpp"

namespace heightlab {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

InequalityReport InequalityReport::compare(double lhs, double rhs, double error,
                                           std::map<std::string, std::string> inputs) {
  InequalityReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.error = std::abs(error);
  if (r.slack > r.error)
    r.verdict = Verdict::Satisfied;
  else if (r.slack < -r.error)
    r.verdict = Verdict::Violated;
  else
    r.verdict = Verdict::Inconclusive;
  r.inputs = std::move(inputs);
  return r;
}

namespace {

long double factorial_ld(int n) {
  long double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Least-squares slope of log y against log x.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return std::nullopt;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace

double c_n_constant(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "c_n needs n >= 1");
  long double H = 0;
  for (int k = 1; k <= n; ++k) H += 1.0L / k;
  const long double pi = std::numbers::pi_v<long double>;
  const long double lead = 0.5L * std::pow(static_cast<long double>(n + 1), n + 1);
  return static_cast<double>(lead * ((n + 1) * H - n + n * std::log(pi) - std::log(factorial_ld(n))));
}

InequalityReport main_conjecture_check(double h, double mu_C, double vol, int n, double error) {
  if (!(vol > 0) || !(mu_C > 0)) throw Error(ErrorKind::InvalidInput, "volume and mass must be positive");
  const double f = static_cast<double>(factorial_ld(n + 1));
  const double lhs = h / f + 0.5 * vol * std::log(mu_C);
  auto r = InequalityReport::compare(lhs, c_n_constant(n) / f, error,
                                     {{"h", fmt(h)}, {"mu_C", fmt(mu_C)}, {"vol", fmt(vol)}, {"n", std::to_string(n)}});
  r.note = "scale-free form h/(n+1)! + (vol/2) log mu_C <= c_n/(n+1)!";
  return r;
}

double diagonal_bound_rhs(const DiagonalForm& X) {
  if (!X.is_fano()) throw Error(ErrorKind::NotFano, "diagonal hypersurface of degree " + std::to_string(X.d()) + " is not Fano");
  const int n = X.n();
  double s = 0;
  for (const auto& a : X.a()) s += static_cast<double>(log_abs(a));
  return c_n_constant(n) - (X.d() - 1) * std::pow(static_cast<double>(n + 2 - X.d()), n) * s;
}

double log_min_point_bound(double mu_C, double vol, int n) {
  if (!(vol > 0) || !(mu_C > 0)) throw Error(ErrorKind::InvalidInput, "volume and mass must be positive");
  return c_n_constant(n) / vol - 0.5 * std::log(mu_C);
}

double min_point_bound(double mu_C, double vol, int n) { return std::exp(log_min_point_bound(mu_C, vol, n)); }

bool ZhangReport::satisfied() const {
  return upper.verdict != Verdict::Violated && lower.verdict != Verdict::Violated &&
         (!p1_upper || p1_upper->verdict != Verdict::Violated);
}

bool ZhangReport::violated() const { return !satisfied(); }

ZhangReport zhang_report(const std::vector<double>& e, double h_hat, double error, std::optional<double> mu_R) {
  if (e.empty()) throw Error(ErrorKind::InvalidInput, "no successive minima");
  for (std::size_t i = 1; i < e.size(); ++i)
    if (e[i] > e[i - 1]) throw Error(ErrorKind::OrderViolation, "successive minima must be nonincreasing");
  ZhangReport z;
  const double mean = std::accumulate(e.begin(), e.end(), 0.0) / e.size();
  z.upper = InequalityReport::compare(h_hat, e.front(), error, {{"e_1", fmt(e.front())}, {"h_hat", fmt(h_hat)}});
  z.lower = InequalityReport::compare(mean, h_hat, error, {{"mean_e", fmt(mean)}, {"h_hat", fmt(h_hat)}});
  if (mu_R) {
    if (!(*mu_R > 0)) throw Error(ErrorKind::InvalidInput, "real mass must be positive");
    z.p1_upper = InequalityReport::compare(h_hat, std::log(2 * std::numbers::pi / *mu_R), error, {{"mu_R", fmt(*mu_R)}});
  }
  return z;
}

PeyreConstant peyre_assemble(double eta_part, double mu_C, double mu_R, FieldShape shape) {
  if (shape.degree < 1 || shape.m_R < 0 || shape.m_C < 0 || shape.m_C % 2 != 0 || shape.m_R + shape.m_C != shape.degree)
    throw Error(ErrorKind::FieldShapeInvalid, "field shape needs m_R + m_C = [F:Q] with m_C even");
  if ((shape.m_C > 0 && !(mu_C > 0)) || (shape.m_R > 0 && !(mu_R > 0)) || !(eta_part > 0))
    throw Error(ErrorKind::InvalidInput, "Peyre inputs must be positive");
  PeyreConstant c{eta_part, eta_part, mu_C, mu_R, shape};
  const double D = shape.degree;
  if (shape.m_C) c.theta *= std::pow(mu_C, shape.m_C / (2 * D));
  if (shape.m_R) c.theta *= std::pow(mu_R, shape.m_R / D);
  return c;
}

double ej_product(double min_H, double theta) {
  if (!(min_H > 0) || !(theta > 0)) throw Error(ErrorKind::InvalidInput, "product inputs must be positive");
  return min_H * theta;
}

XaStudy xa_study(int d, int n, const std::vector<BigInt>& a_grid, const XaOptions& opts) {
  XaStudy st;
  st.d = d;
  st.n = n;
  const GrowthTable growth = min_height_growth(d, n, a_grid, opts.B_cap);
  std::vector<double> ax, hy, ex, ey;
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    const DiagonalForm f = DiagonalForm::xa_family(d, n, a_grid[i]);
    const Variety X = Variety::from_diagonal(f);
    XaRow row;
    row.a = a_grid[i];
    row.min_H = growth.rows[i].H_min;
    row.certificate = growth.rows[i].certificate;
    row.a_root = growth.rows[i].a_root;
    MahlerOptions mo;
    mo.tol = 1e-5;
    mo.resolution = 16;
    row.mahler = mahler_measure(f.to_form(), mo).m;
    row.exp_h_proxy = std::exp(row.mahler / (d * (n + 1)));
    BigInt rest = BigInt(d) * a_grid[i];
    std::vector<std::uint64_t> bad;
    for (std::uint64_t p = 2; BigInt(p) * p <= rest; ++p)
      if (rest % p == 0) {
        bad.push_back(p);
        while (rest % p == 0) rest /= p;
      }
    if (rest > 1) bad.push_back(rest.convert_to<std::uint64_t>());
    for (std::uint64_t p : bad) {
      const double mu = local_density(X, p, opts.r_max).mu_p.convert_to<double>();
      row.bad_factors.emplace_back(p, mu);
      row.bad_product *= mu;
      row.bad_cap *= 4;
      row.bad_within_cap = row.bad_within_cap && mu <= 4.0;
    }
    for (std::uint64_t p : primes_up_to(opts.P_max)) {
      if (std::find(bad.begin(), bad.end(), p) != bad.end()) continue;
      row.good_partial *= (1 - 1.0 / p) * local_density(X, p, opts.r_max).mu_p.convert_to<double>();
    }
    if (row.min_H) {
      ax.push_back(row.a.convert_to<double>());
      hy.push_back(*row.min_H);
    }
    ex.push_back(row.a.convert_to<double>());
    ey.push_back(row.exp_h_proxy);
    st.rows.push_back(std::move(row));
  }
  st.min_H_slope = loglog_slope(ax, hy);
  st.exp_h_slope = loglog_slope(ex, ey);
  return st;
}

}  // namespace heightlab

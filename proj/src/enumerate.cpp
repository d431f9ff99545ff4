#include "heightlab/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>

#include "heightlab/box_scan.hpp"
#include "heightlab/localdens.hpp"

namespace heightlab {

namespace {

constexpr double kRelTol = 1e-12;

kernels::NormKey key_kind(const MetricSpec& m) {
  if (m.is_weil()) return kernels::NormKey::MaxAbs;
  if (m.p == 2.0) return kernels::NormKey::SumSquares;
  return kernels::NormKey::PowerSum;
}

double norm_from_key(double key, const MetricSpec& m) {
  switch (key_kind(m)) {
    case kernels::NormKey::MaxAbs: return key;
    case kernels::NormKey::SumSquares: return std::sqrt(key);
    case kernels::NormKey::PowerSum: return std::pow(key, 1.0 / m.p);
  }
  return key;
}

int checked_power(const Variety& X) {
  const int k = X.anticanonical_power();
  if (k < 1) throw Error(ErrorKind::NotFano, "anticanonical height undefined: " + X.describe() + " is not Fano");
  return k;
}

void check_metric(const MetricSpec& m) {
  if (m.twist) throw Error(ErrorKind::InvalidInput, "twisted metrics are not supported for point enumeration");
}

std::vector<std::int64_t> diagonal_int64(const Variety& X) {
  std::optional<std::vector<BigInt>> a;
  if (X.diagonal) a = X.diagonal->a();
  else if (X.form) a = X.form->diagonal_coefficients();
  if (!a) return {};
  std::vector<std::int64_t> out;
  for (const auto& c : *a) {
    if (c == 0 || boost::multiprecision::abs(c) > BigInt(1) << 40) return {};
    out.push_back(c.convert_to<std::int64_t>());
  }
  return out;
}

std::uint64_t prefix_count(int nvars, std::int64_t M) {
  if (nvars <= 1) return 1;
  long double total = M + 1;
  for (int i = 1; i < nvars - 1; ++i) total *= 2 * M + 1;
  return total > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(total);
}

std::int64_t box_bound(double B, double shift, int k) {
  const double T = std::pow(B * std::exp(-shift / 2), 1.0 / k);
  return static_cast<std::int64_t>(std::floor(T * (1 + kRelTol)));
}

}  // namespace

bool Exclusion::contains(const std::int64_t* x, int nvars) const {
  for (const auto& f : forms) {
    if (static_cast<int>(f.size()) != nvars) throw Error(ErrorKind::DimensionMismatch, "exclusion form length");
    __int128 s = 0;
    for (int i = 0; i < nvars; ++i) s += static_cast<__int128>(f[i]) * x[i];
    if (s != 0) return false;
  }
  return true;
}

std::vector<double> height_grid(double B_max, int G) {
  if (G < 1) throw Error(ErrorKind::InvalidInput, "grid needs at least one bound");
  std::vector<double> g(G);
  for (int i = 0; i < G; ++i) g[i] = B_max * std::ldexp(1.0, i - (G - 1));
  return g;
}

CountReport count_points(const Variety& X, const MetricSpec& metric, const std::vector<double>& B_grid,
                         const std::vector<Exclusion>& exclusions, const ScanOptions& opts) {
  check_metric(metric);
  if (B_grid.empty()) throw Error(ErrorKind::InvalidInput, "empty height grid");
  for (std::size_t i = 0; i < B_grid.size(); ++i) {
    if (!(B_grid[i] >= 1.0)) throw Error(ErrorKind::InvalidInput, "height bounds must be >= 1");
    if (i && B_grid[i] < B_grid[i - 1]) throw Error(ErrorKind::InvalidInput, "height grid must be nondecreasing");
  }
  const int k = checked_power(X);
  CountReport rep;
  rep.metric = metric;
  rep.k = k;
  for (const auto& e : exclusions) rep.excluded.push_back(e.name);
  rep.B_grid = B_grid;

  std::int64_t M = box_bound(rep.B_grid.back(), metric.shift, k);
  while (prefix_count(X.nvars, M) > opts.budget) {
    rep.B_grid.pop_back();
    rep.partial = true;
    if (rep.B_grid.empty()) throw Error(ErrorKind::BudgetExceeded, "even the smallest bound exceeds the scan budget");
    M = box_bound(rep.B_grid.back(), metric.shift, k);
  }
  if (rep.partial) rep.note = "grid truncated to the scan budget";

  std::optional<CompiledForm> cf;
  if (X.form) {
    cf.emplace(*X.form);
    if (!cf->fits_int128(std::max<std::int64_t>(M, 1)))
      throw Error(ErrorKind::BudgetExceeded, "form values exceed 128-bit range at this bound");
  }
  kernels::ScanResult scan;
  if (M >= 1) {
    kernels::ScanSpec spec;
    spec.nvars = X.nvars;
    spec.bound = M;
    spec.form = cf ? &*cf : nullptr;
    spec.diagonal = diagonal_int64(X);
    spec.exclusions = &exclusions;
    spec.sieve = opts.sieve;
    spec.shards = opts.shards;
    spec.key = key_kind(metric);
    spec.p = metric.p;
    scan = kernels::box_scan(spec);
  }
  for (double B : rep.B_grid) {
    const double Bs = B * std::exp(-metric.shift / 2) * (1 + kRelTol);
    std::uint64_t n = 0;
    for (const auto& [key, c] : scan.key_counts)
      if (std::pow(norm_from_key(key, metric), k) <= Bs) n += c;
    rep.counts.push_back(n);
  }
  return rep;
}

ThetaFit fit_theta(const std::vector<double>& B, const std::vector<std::uint64_t>& N, int r) {
  if (B.size() != N.size()) throw Error(ErrorKind::DimensionMismatch, "grid and counts differ in length");
  if (B.size() < 4) throw Error(ErrorKind::InsufficientData, "fit_theta needs at least 4 grid values");
  if (r < 0) throw Error(ErrorKind::InvalidInput, "log power must be >= 0");
  ThetaFit fit;
  std::vector<double> xs, ys;
  for (std::size_t i = B.size() / 2; i < B.size(); ++i) {
    const double x = B[i] * std::pow(std::log(B[i]), r);
    if (!(x > 0)) continue;
    xs.push_back(x);
    ys.push_back(static_cast<double>(N[i]));
  }
  if (xs.size() < 2) throw Error(ErrorKind::InsufficientData, "too few usable grid values in the tail");
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += xs[i] * ys[i];
    sxx += xs[i] * xs[i];
  }
  fit.theta = sxy / sxx;
  double rss = 0, lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double res = ys[i] - fit.theta * xs[i];
    rss += res * res;
    lo = std::min(lo, ys[i] / xs[i]);
    hi = std::max(hi, ys[i] / xs[i]);
  }
  const double se = std::sqrt(rss / (xs.size() - 1) / sxx);
  fit.stderr_rel = fit.theta != 0 ? se / std::abs(fit.theta) : INFINITY;
  fit.misfit = fit.theta == 0 || (hi - lo) / std::abs(fit.theta) > 0.05;
  fit.points_used = static_cast<int>(xs.size());
  return fit;
}

ThetaFit fit_theta(CountReport& report, int r) {
  const ThetaFit f = fit_theta(report.B_grid, report.counts, r);
  report.theta_hat = f.theta;
  report.theta_stderr = f.stderr_rel * f.theta;
  report.r_used = r;
  return f;
}

std::string LocalCertificate::describe() const {
  if (p == 0) return "no real points";
  std::ostringstream out;
  out << "no primitive solutions mod " << p;
  if (r > 1) out << "^" << r;
  return out.str();
}

std::vector<LocalCertificate> local_obstructions(const Variety& X, std::uint64_t max_p, std::uint64_t max_modulus) {
  std::vector<LocalCertificate> out;
  if (X.is_projective_space()) return out;
  const auto diag = diagonal_int64(X);
  if (!diag.empty() && X.form->degree() % 2 == 0) {
    const bool all_pos = std::all_of(diag.begin(), diag.end(), [](std::int64_t a) { return a > 0; });
    const bool all_neg = std::all_of(diag.begin(), diag.end(), [](std::int64_t a) { return a < 0; });
    if (all_pos || all_neg) out.push_back({0, 0});
  }
  for (std::uint64_t p : primes_up_to(max_p)) {
    std::uint64_t q = p;
    for (int r = 1; q <= max_modulus; ++r, q *= p) {
      BigInt c;
      try {
        c = count_projective_mod(X, p, r);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::BudgetExceeded) break;
        throw;
      }
      if (c == 0) {
        out.push_back({p, r});
        break;
      }
      // A smooth F_p-point lifts to every p^r.
      if (r == 1 && good_reduction(X, p)) break;
    }
  }
  return out;
}

std::optional<LocalCertificate> local_obstruction(const Variety& X, std::uint64_t max_p, std::uint64_t max_modulus) {
  auto all = local_obstructions(X, max_p, max_modulus);
  if (all.empty()) return std::nullopt;
  return all.front();
}

namespace {

struct GI {
  __int128 re = 0, im = 0;
  GI operator*(const GI& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  GI operator+(const GI& o) const { return {re + o.re, im + o.im}; }
  bool operator==(const GI& o) const { return re == o.re && im == o.im; }
  __int128 norm() const { return re * re + im * im; }
};

GI gi_pow(GI z, int d) {
  GI r{1, 0};
  for (int k = 0; k < d; ++k) r = r * z;
  return r;
}

std::vector<GI> gaussian_roots(GI w, int d) {
  if (w.re == 0 && w.im == 0) return {GI{}};
  const std::complex<double> wc(static_cast<double>(w.re), static_cast<double>(w.im));
  const double mag = std::pow(std::abs(wc), 1.0 / d);
  const double arg = std::arg(wc) / d;
  std::vector<GI> out;
  for (int j = 0; j < d; ++j) {
    const std::complex<double> z = std::polar(mag, arg + 2 * M_PI * j / d);
    const GI g{static_cast<__int128>(std::llround(z.real())), static_cast<__int128>(std::llround(z.imag()))};
    if (gi_pow(g, d) == w && std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  }
  return out;
}

// Minimal point over Q(i) by max-norm shells N = max |z_i|^2.
MinPointReport gaussian_min_point(const Variety& X, const MetricSpec& metric, double B_cap, int k,
                                  const MinPointOptions& opts) {
  MinPointReport rep;
  rep.field = FieldChoice::QI;
  rep.search_bound = B_cap;
  rep.searched = true;
  rep.note = "upper bound for the infimum over algebraic points";
  const double T_cap = std::pow(B_cap * std::exp(-metric.shift / 2), 1.0 / k);
  const auto N_cap = static_cast<std::int64_t>(std::floor(T_cap * T_cap * (1 + kRelTol)));
  const int nv = X.nvars;
  const auto diag = diagonal_int64(X);
  const auto terms = X.form ? X.form->terms() : std::vector<Term>{};
  auto norm_of = [&](const std::vector<GI>& z) {
    std::vector<double> mods;
    for (const auto& c : z) mods.push_back(std::sqrt(static_cast<double>(c.norm())));
    return lp_norm(std::span<const double>(mods), metric.p);
  };
  auto eval = [&](const std::vector<GI>& z) {
    GI s;
    for (const auto& t : terms) {
      GI v{static_cast<__int128>(t.coeff.convert_to<long long>()), 0};
      for (int i = 0; i < nv; ++i) v = v * gi_pow(z[i], t.exponents[i]);
      s = s + v;
    }
    return s;
  };
  double best = INFINITY;
  std::vector<GI> best_pt;
  std::uint64_t work = 0;
  for (std::int64_t N = 1; N <= N_cap; ++N) {
    if (std::sqrt(static_cast<double>(N)) > best * (1 + kRelTol)) break;
    const auto r = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(N))));
    std::vector<GI> ball;
    for (std::int64_t a = -r; a <= r; ++a)
      for (std::int64_t b = -r; b <= r; ++b)
        if (a * a + b * b <= N) ball.push_back({a, b});
    std::vector<GI> z(nv);
    std::vector<std::size_t> idx(nv - 1, 0);
    auto consider = [&]() {
      __int128 mx = 0;
      for (const auto& c : z) mx = std::max(mx, c.norm());
      if (mx != N) return;
      if (X.form && !(eval(z) == GI{})) return;
      std::vector<GaussianInt> big;
      for (const auto& c : z) big.push_back({BigInt(static_cast<long long>(c.re)), BigInt(static_cast<long long>(c.im))});
      GaussianInt g{0, 0};
      for (const auto& c : big) g = gaussian_gcd(g, c);
      if (g.norm() != 1) return;
      const auto first = std::find_if(big.begin(), big.end(), [](const GaussianInt& c) { return !c.is_zero(); });
      if (!(first->re > 0 && first->im >= 0)) return;
      const double nrm = norm_of(z);
      if (nrm < best) {
        best = nrm;
        best_pt = z;
      }
    };
    while (true) {
      if (++work > opts.budget) {
        rep.note += "; search stopped at the work budget";
        rep.search_bound = std::pow(std::sqrt(static_cast<double>(N)), k) * std::exp(metric.shift / 2);
        N = N_cap;
        break;
      }
      for (int i = 0; i < nv - 1; ++i) z[i] = ball[idx[i]];
      if (!X.form) {
        for (const auto& c : ball) {
          z[nv - 1] = c;
          consider();
        }
      } else if (!diag.empty()) {
        const int d = X.form->degree();
        GI R;
        for (int i = 0; i < nv - 1; ++i) R = R + GI{-diag[i], 0} * gi_pow(z[i], d);
        const __int128 a = diag.back();
        if (R.re % a == 0 && R.im % a == 0)
          for (const auto& c : gaussian_roots({R.re / a, R.im / a}, d))
            if (c.norm() <= N) {
              z[nv - 1] = c;
              consider();
            }
      } else {
        for (const auto& c : ball) {
          z[nv - 1] = c;
          consider();
        }
      }
      int i = nv - 2;
      while (i >= 0 && ++idx[i] == ball.size()) idx[i--] = 0;
      if (i < 0) break;
    }
  }
  if (!best_pt.empty()) {
    const double H = std::pow(best, k) * std::exp(metric.shift / 2);
    if (H <= B_cap * (1 + kRelTol)) {
      std::vector<GaussianInt> pt;
      for (const auto& c : best_pt) pt.push_back({BigInt(static_cast<long long>(c.re)), BigInt(static_cast<long long>(c.im))});
      rep.gaussian_point = pt;
      rep.H_min = H;
    }
  }
  return rep;
}

}  // namespace

MinPointReport min_point(const Variety& X, const MetricSpec& metric, double B_cap, FieldChoice field,
                         const MinPointOptions& opts) {
  check_metric(metric);
  if (!(B_cap >= 1.0)) throw Error(ErrorKind::InvalidInput, "search cap must be >= 1");
  const int k = checked_power(X);
  if (field == FieldChoice::QI) return gaussian_min_point(X, metric, B_cap, k, opts);

  MinPointReport rep;
  rep.field = FieldChoice::Q;
  rep.search_bound = B_cap;
  rep.certificates = local_obstructions(X);
  if (!rep.certificates.empty()) rep.certificate = rep.certificates.front();
  if (rep.certificate && !opts.search_despite_certificate) {
    rep.note = "no rational points: " + rep.certificate->describe();
    for (std::size_t i = 1; i < rep.certificates.size(); ++i) rep.note += "; " + rep.certificates[i].describe();
    return rep;
  }
  rep.searched = true;
  const std::int64_t M_cap = box_bound(B_cap, metric.shift, k);
  std::optional<CompiledForm> cf;
  if (X.form) {
    cf.emplace(*X.form);
    if (!cf->fits_int128(std::max<std::int64_t>(M_cap, 1)))
      throw Error(ErrorKind::BudgetExceeded, "form values exceed 128-bit range at this cap");
  }
  double best = INFINITY;
  std::vector<std::int64_t> best_pt;
  std::uint64_t work = 0;
  for (std::int64_t t = 1; t <= M_cap; ++t) {
    if (static_cast<double>(t) > best * (1 + kRelTol)) break;
    work += prefix_count(X.nvars, t);
    if (work > opts.budget) {
      rep.note = "search stopped at the work budget";
      rep.search_bound = std::pow(static_cast<double>(t - 1), k) * std::exp(metric.shift / 2);
      break;
    }
    kernels::ScanSpec spec;
    spec.nvars = X.nvars;
    spec.bound = t;
    spec.shell = true;
    spec.form = cf ? &*cf : nullptr;
    spec.diagonal = diagonal_int64(X);
    spec.key = key_kind(metric);
    spec.p = metric.p;
    spec.max_points = 1;
    const auto scan = kernels::box_scan(spec);
    if (!scan.points.empty()) {
      const double nrm = norm_from_key(scan.points[0].key, metric);
      if (nrm < best) {
        best = nrm;
        best_pt = scan.points[0].x;
      }
    }
  }
  if (!best_pt.empty()) {
    const double H = std::pow(best, k) * std::exp(metric.shift / 2);
    if (H <= B_cap * (1 + kRelTol)) {
      rep.point = std::vector<BigInt>(best_pt.begin(), best_pt.end());
      rep.H_min = H;
    }
  }
  if (!rep.found() && rep.note.empty()) rep.note = "no point up to the search bound";
  return rep;
}

GrowthTable min_height_growth(int d, int n, const std::vector<BigInt>& a_grid, double B_cap) {
  GrowthTable table;
  std::vector<double> lx, ly;
  for (const auto& a : a_grid) {
    if (a < 1) throw Error(ErrorKind::InvalidInput, "family parameter a must be positive");
    const Variety X = Variety::from_diagonal(DiagonalForm::xa_family(d, n, a));
    const MinPointReport r = min_point(X, MetricSpec::weil(), B_cap);
    GrowthRow row;
    row.a = a;
    row.a_root = std::pow(a.convert_to<double>(), 1.0 / d);
    row.certificate = r.certificate;
    if (r.found()) {
      row.H_min = r.H_min;
      lx.push_back(std::log(a.convert_to<double>()));
      ly.push_back(std::log(r.H_min));
    }
    table.rows.push_back(std::move(row));
  }
  table.fitted_rows = static_cast<int>(lx.size());
  if (lx.size() >= 2) {
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx > 0) table.slope = sxy / sxx;
  }
  return table;
}

}  // namespace heightlab

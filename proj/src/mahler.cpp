#include "heightlab/mahler.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include <unsupported/Eigen/Polynomials>

#include "heightlab/kernels.hpp"

namespace heightlab {

namespace {

using cd = std::complex<double>;

struct SliceTerm {
  double coeff;
  std::vector<int> phase;  // exponents of the outer variables
};

// f restricted to the torus, dehomogenized at one variable and viewed as a
// polynomial in the Jensen variable with coefficients on the outer torus.
struct Slicer {
  int kmin = 0;
  std::vector<std::vector<SliceTerm>> levels;  // index k - kmin
  int outer_dims = 0;
  bool binomial = false;

  double operator()(const double* theta) const {
    std::vector<cd> c(levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k) {
      cd s = 0.0;
      for (const auto& t : levels[k]) {
        double angle = 0.0;
        for (int l = 0; l < outer_dims; ++l) angle += t.phase[l] * theta[l];
        s += t.coeff * std::polar(1.0, angle);
      }
      c[k] = s;
    }
    std::size_t lo = 0, hi = c.size();
    while (lo < hi && c[lo] == 0.0) ++lo;
    while (hi > lo && c[hi - 1] == 0.0) --hi;
    if (lo == hi) return -std::numeric_limits<double>::infinity();
    const double top = std::log(std::abs(c[hi - 1]));
    if (hi - lo == 1) return top;
    if (binomial || hi - lo == 2) return std::max(top, std::log(std::abs(c[lo])));
    Eigen::Matrix<cd, Eigen::Dynamic, 1> poly(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) poly[k - lo] = c[k];
    Eigen::PolynomialSolver<cd, Eigen::Dynamic> solver(poly);
    double m = top;
    for (Eigen::Index i = 0; i < solver.roots().size(); ++i) m += std::max(0.0, std::log(std::abs(solver.roots()[i])));
    return m;
  }
};

double log_max_coeff(const HomogeneousForm& f) {
  long double best = -1.0L;
  for (const auto& t : f.terms()) best = std::max(best, log_abs(t.coeff));
  return static_cast<double>(best);
}

}  // namespace

MahlerReport mahler_measure(const HomogeneousForm& f, const MahlerOptions& opts) {
  const std::vector<Term> terms = f.terms();
  const int nv = f.nvars();
  MahlerReport r;
  const double logmax = log_max_coeff(f);
  if (terms.size() == 1) {
    r.m = static_cast<double>(log_abs(terms[0].coeff));
    r.coeff_gap = std::abs(r.m - logmax);
    r.method = "monomial";
    return r;
  }

  std::vector<int> active;
  for (int v = 0; v < nv; ++v)
    if (f.poly().degree_in(v) > 0) active.push_back(v);

  // Jensen variable: prefer one in which f is a binomial, then the largest degree.
  int j = -1;
  bool binomial = false;
  for (int v : active) {
    std::set<int> powers;
    for (const auto& t : terms) powers.insert(t.exponents[v]);
    const bool bin = powers.size() == 2;
    if (j < 0 || (bin && !binomial) || (bin == binomial && f.poly().degree_in(v) > f.poly().degree_in(j))) {
      j = v;
      binomial = bin;
    }
  }
  std::vector<int> outer;
  for (int v : active)
    if (v != j) outer.push_back(v);
  outer.erase(outer.begin());  // dehomogenized to 1

  Slicer slicer;
  slicer.outer_dims = static_cast<int>(outer.size());
  slicer.binomial = binomial;
  int kmin = f.degree(), kmax = 0;
  for (const auto& t : terms) {
    kmin = std::min(kmin, t.exponents[j]);
    kmax = std::max(kmax, t.exponents[j]);
  }
  slicer.kmin = kmin;
  slicer.levels.resize(kmax - kmin + 1);
  for (const auto& t : terms) {
    SliceTerm st{static_cast<double>(t.coeff.convert_to<long double>()), {}};
    for (int v : outer) st.phase.push_back(t.exponents[v]);
    slicer.levels[t.exponents[j] - kmin].push_back(std::move(st));
  }
  const std::function<double(const double*)> fn = [&slicer](const double* th) { return slicer(th); };
  const int dims = slicer.outer_dims;

  if (dims == 0) {
    r.m = slicer(nullptr);
    r.nodes = 1;
    r.est_error = 1e-14 * std::max(1.0, std::abs(r.m));
    r.method = "jensen";
  } else if (opts.method == MahlerMethod::QMC) {
    const long n = std::max<long>(opts.resolution, 1024);
    const double half = kernels::weyl_mean(dims, n, fn);
    r.m = kernels::weyl_mean(dims, 2 * n, fn);
    r.est_error = std::abs(r.m - half);
    r.nodes = 2 * n;
    r.method = "jensen+weyl";
  } else {
    long n = std::max<long>(opts.resolution, 4);
    double prev = kernels::torus_mean(dims, static_cast<int>(n), fn);
    while (true) {
      n *= 2;
      const double total = std::pow(static_cast<double>(n), dims);
      if (total > static_cast<double>(opts.max_nodes))
        throw Error(ErrorKind::ResolutionTooLow, "mahler_measure: torus rule did not reach tolerance within the node budget");
      const double cur = kernels::torus_mean(dims, static_cast<int>(n), fn);
      if (std::abs(cur - prev) <= opts.tol) {
        r.m = cur;
        r.est_error = std::abs(cur - prev);
        r.nodes = static_cast<long>(total);
        break;
      }
      prev = cur;
    }
    r.method = "jensen+trapezoid";
  }
  r.coeff_gap = std::abs(r.m - logmax);
  return r;
}

double hypersurface_weil_height(const HomogeneousForm& f, const MahlerOptions& opts) {
  return mahler_measure(f, opts).m;
}

double mahler_gap(const HomogeneousForm& f, const MahlerOptions& opts) { return mahler_measure(f, opts).coeff_gap; }

}  // namespace heightlab

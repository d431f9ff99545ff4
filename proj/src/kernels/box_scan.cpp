#include "heightlab/box_scan.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace heightlab::kernels {

namespace {

constexpr std::int64_t kSieveModuli[] = {8, 9, 5, 7, 11, 13};

std::int64_t pos_mod(__int128 v, std::int64_t s) {
  const auto r = static_cast<std::int64_t>(v % s);
  return r < 0 ? r + s : r;
}

// Largest r >= 0 with r^d <= v, or -1 when r^d != v.
std::int64_t exact_root(__int128 v, int d) {
  if (v == 0) return 0;
  auto r = static_cast<std::int64_t>(std::llround(std::pow(static_cast<long double>(v), 1.0L / d)));
  for (std::int64_t c = std::max<std::int64_t>(0, r - 1); c <= r + 1; ++c) {
    __int128 pw = 1;
    bool over = false;
    for (int k = 0; k < d && !over; ++k) {
      pw *= c;
      over = pw > v;
    }
    if (!over && pw == v) return c;
  }
  return -1;
}

constexpr std::int64_t kPowerModuli[] = {64, 63, 65, 11};

// Tables of d-th power residues used to reject v before extracting a root.
struct PowerFilter {
  std::vector<std::vector<char>> table;
  explicit PowerFilter(int d) {
    for (std::int64_t m : kPowerModuli) {
      std::vector<char> t(m, 0);
      for (std::int64_t y = 0; y < m; ++y) {
        std::int64_t v = 1;
        for (int k = 0; k < d; ++k) v = v * y % m;
        t[v] = 1;
      }
      table.push_back(std::move(t));
    }
  }
  bool maybe_power(__int128 v) const {
    for (std::size_t i = 0; i < table.size(); ++i)
      if (!table[i][static_cast<std::size_t>(v % kPowerModuli[i])]) return false;
    return true;
  }
};

bool canonical_primitive(const std::int64_t* x, int nv) {
  int first = 0;
  while (first < nv && x[first] == 0) ++first;
  if (first == nv || x[first] < 0) return false;
  std::int64_t g = 0;
  for (int i = 0; i < nv; ++i) g = std::gcd(g, x[i] < 0 ? -x[i] : x[i]);
  return g == 1;
}

struct Shard {
  std::map<double, std::uint64_t> counts;
  std::vector<ScanPoint> points;
};

void record(const ScanSpec& spec, const std::int64_t* x, Shard& out) {
  const int nv = spec.nvars;
  if (!canonical_primitive(x, nv)) return;
  if (spec.shell) {
    std::int64_t m = 0;
    for (int i = 0; i < nv; ++i) m = std::max(m, x[i] < 0 ? -x[i] : x[i]);
    if (m != spec.bound) return;
  }
  if (spec.exclusions)
    for (const auto& e : *spec.exclusions)
      if (e.contains(x, nv)) return;
  const double key = norm_key(x, nv, spec.key, spec.p);
  out.counts[key]++;
  if (spec.max_points) {
    out.points.push_back({key, std::vector<std::int64_t>(x, x + nv)});
    if (out.points.size() > 4 * spec.max_points) {
      std::sort(out.points.begin(), out.points.end());
      out.points.resize(spec.max_points);
    }
  }
}

// Terms of the form split as coefficient, prefix exponents, exponent of the last variable.
struct SplitTerm {
  __int128 coeff;
  std::vector<int> e;
};

}  // namespace

double norm_key(const std::int64_t* x, int nvars, NormKey key, double p) {
  double k = 0.0;
  for (int i = 0; i < nvars; ++i) {
    const double a = std::abs(static_cast<double>(x[i]));
    switch (key) {
      case NormKey::MaxAbs: k = std::max(k, a); break;
      case NormKey::SumSquares: k += a * a; break;
      case NormKey::PowerSum: k += std::pow(a, p); break;
    }
  }
  return k;
}

ScanResult box_scan(const ScanSpec& spec) {
  const int nv = spec.nvars;
  const std::int64_t M = spec.bound;
  const int last = nv - 1;
  const std::int64_t width = 2 * M + 1;
  // Prefix: x_0 in [0, M], x_1..x_{last-1} in [-M, M].
  std::uint64_t prefixes = static_cast<std::uint64_t>(M + 1);
  for (int i = 1; i < last; ++i) prefixes *= static_cast<std::uint64_t>(width);
  if (last == 0) prefixes = 1;

  const std::vector<int> exps = spec.form ? spec.form->exponents() : std::vector<int>{};
  std::vector<SplitTerm> terms;
  int deg_last = 0;
  if (spec.form && spec.diagonal.empty()) {
    const CompiledForm& f = *spec.form;
    for (std::size_t t = 0; t < f.num_terms(); ++t) {
      SplitTerm st{0, std::vector<int>(exps.begin() + t * nv, exps.begin() + (t + 1) * nv)};
      terms.push_back(std::move(st));
      deg_last = std::max(deg_last, terms.back().e[last]);
    }
    const auto c = f.coeffs_i128();
    for (std::size_t t = 0; t < terms.size(); ++t) terms[t].coeff = c[t];
  }

  int shards = spec.shards > 0 ? spec.shards : omp_get_max_threads();
  shards = static_cast<int>(std::min<std::uint64_t>(shards, std::max<std::uint64_t>(prefixes, 1)));
  std::vector<Shard> parts(shards);
  const PowerFilter power_filter(spec.form ? spec.form->degree() : 1);

#pragma omp parallel for num_threads(shards) schedule(static, 1)
  for (int s = 0; s < shards; ++s) {
    Shard& out = parts[s];
    const std::uint64_t lo = prefixes * s / shards;
    const std::uint64_t hi = prefixes * (s + 1) / shards;
    std::vector<std::int64_t> x(nv, 0);
    std::vector<__int128> coef(deg_last + 1);
    std::vector<std::uint32_t> masks(std::size(kSieveModuli));
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      std::uint64_t rest = idx;
      if (last > 0) {
        for (int i = last - 1; i >= 1; --i) {
          x[i] = static_cast<std::int64_t>(rest % width) - M;
          rest /= width;
        }
        x[0] = static_cast<std::int64_t>(rest);
      }
      std::int64_t pm = 0;
      for (int i = 0; i < last; ++i) pm = std::max(pm, x[i] < 0 ? -x[i] : x[i]);
      auto try_last = [&](std::int64_t y) {
        if (y < -M || y > M) return;
        if (spec.shell && pm < M && y != M && y != -M) return;
        x[last] = y;
        record(spec, x.data(), out);
      };
      if (!spec.form) {
        if (spec.shell && pm < M) {
          try_last(-M);
          try_last(M);
        } else {
          for (std::int64_t y = -M; y <= M; ++y) try_last(y);
        }
        continue;
      }
      if (!spec.diagonal.empty()) {
        const int d = spec.form->degree();
        __int128 R = 0;
        for (int i = 0; i < last; ++i) {
          __int128 pw = spec.diagonal[i];
          for (int k = 0; k < d; ++k) pw *= x[i];
          R -= pw;
        }
        const std::int64_t a = spec.diagonal[last];
        if (R % a != 0) continue;
        const __int128 v = R / a;
        if (v < 0 && d % 2 == 0) continue;
        if (!power_filter.maybe_power(v < 0 ? -v : v)) continue;
        const std::int64_t r = exact_root(v < 0 ? -v : v, d);
        if (r < 0) continue;
        if (d % 2 == 1) {
          try_last(v < 0 ? -r : r);
        } else {
          try_last(r);
          if (r != 0) try_last(-r);
        }
        continue;
      }
      std::fill(coef.begin(), coef.end(), 0);
      for (const auto& t : terms) {
        __int128 v = t.coeff;
        for (int i = 0; i < last; ++i)
          for (int k = 0; k < t.e[i]; ++k) v *= x[i];
        coef[t.e[last]] += v;
      }
      bool impossible = false;
      if (spec.sieve) {
        for (std::size_t m = 0; m < masks.size() && !impossible; ++m) {
          const std::int64_t s = kSieveModuli[m];
          std::uint32_t mask = 0;
          for (std::int64_t y = 0; y < s; ++y) {
            std::int64_t acc = 0;
            for (int k = deg_last; k >= 0; --k) acc = (acc * y + pos_mod(coef[k], s)) % s;
            if (acc == 0) mask |= 1u << y;
          }
          masks[m] = mask;
          impossible = mask == 0;
        }
        if (impossible) continue;
      }
      auto eval_last = [&](std::int64_t y) {
        if (spec.sieve)
          for (std::size_t m = 0; m < masks.size(); ++m)
            if (!(masks[m] >> pos_mod(y, kSieveModuli[m]) & 1u)) return;
        __int128 acc = 0;
        for (int k = deg_last; k >= 0; --k) acc = acc * y + coef[k];
        if (acc == 0) try_last(y);
      };
      if (spec.shell && pm < M) {
        eval_last(-M);
        eval_last(M);
      } else {
        for (std::int64_t y = -M; y <= M; ++y) eval_last(y);
      }
    }
  }

  ScanResult result;
  result.prefixes = prefixes;
  for (auto& part : parts) {
    for (const auto& [k, c] : part.counts) result.key_counts[k] += c;
    result.points.insert(result.points.end(), part.points.begin(), part.points.end());
  }
  std::sort(result.points.begin(), result.points.end());
  if (result.points.size() > spec.max_points) result.points.resize(spec.max_points);
  return result;
}

}  // namespace heightlab::kernels

#include "heightlab/localdens.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "heightlab/kernels.hpp"

namespace heightlab {

namespace mp = boost::multiprecision;

namespace {

using Poly = std::vector<std::uint64_t>;  // coefficients mod p, low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_rem(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t inv = powmod(b.back(), p - 2, p);
  while (a.size() > db && !a.empty()) {
    const std::uint64_t c = mulmod(a.back(), inv, p);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t k = 0; k <= db; ++k) a[shift + k] = (a[shift + k] + p - mulmod(c, b[k], p)) % p;
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
  return poly_rem(std::move(c), g, p);
}

// y^e mod g.
Poly poly_xpow(std::uint64_t e, const Poly& g, std::uint64_t p) {
  Poly result = poly_rem({1}, g, p);
  Poly base = poly_rem({0, 1}, g, p);
  while (e) {
    if (e & 1u) result = poly_mulmod(result, base, g, p);
    base = poly_mulmod(base, base, g, p);
    e >>= 1u;
  }
  return result;
}

// Distinct roots of g in F_p; the zero polynomial has p of them.
std::uint64_t count_roots(Poly g, std::uint64_t p) {
  trim(g);
  if (g.empty()) return p;
  const std::size_t deg = g.size() - 1;
  if (deg == 0) return 0;
  if (deg == 1) return 1;
  if (deg == 2 && p > 2) {
    const std::uint64_t disc = (mulmod(g[1], g[1], p) + p - mulmod(4 % p, mulmod(g[2], g[0], p), p)) % p;
    if (disc == 0) return 1;
    return powmod(disc, (p - 1) / 2, p) == 1 ? 2 : 0;
  }
  Poly h = poly_xpow(p, g, p);
  h.resize(std::max<std::size_t>(h.size(), 2), 0);
  h[1] = (h[1] + p - 1) % p;
  const Poly d = poly_gcd(g, h, p);
  return d.empty() ? deg : d.size() - 1;
}

struct ModTerm {
  std::uint64_t coeff;
  std::vector<int> e;
};

std::vector<ModTerm> mod_terms(const HomogeneousForm& f, std::uint64_t p) {
  std::vector<ModTerm> out;
  for (const auto& t : f.terms()) {
    const std::uint64_t c = mod_of(t.coeff, p);
    if (c) out.push_back({c, t.exponents});
  }
  return out;
}

// Coefficients in the last variable of Σ terms at the given prefix.
Poly slice_poly(const std::vector<ModTerm>& terms, const std::vector<std::uint64_t>& x, int last, int degree,
                std::uint64_t p) {
  Poly g(degree + 1, 0);
  for (const auto& t : terms) {
    std::uint64_t v = t.coeff;
    for (int i = 0; i < last && v; ++i)
      if (t.e[i]) v = mulmod(v, powmod(x[i], t.e[i], p), p);
    g[t.e[last]] = (g[t.e[last]] + v) % p;
  }
  return g;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

double log_ipow(std::uint64_t b, int e) { return e * std::log(static_cast<double>(b)); }

// Visits every chart point (0,..,0,1,x_{i+1},..,x_{m-1}, *) of P^m(F_p) with
// the last coordinate left free. `visit` returns a count for that fiber.
template <class Visit>
std::uint64_t for_each_chart_prefix(int nvars, std::uint64_t p, std::uint64_t budget, Visit visit) {
  const int m = nvars - 1;
  double total = 0;
  for (int i = 0; i < m; ++i) total += std::pow(static_cast<double>(p), m - 1 - i);
  if (total > static_cast<double>(budget))
    throw Error(ErrorKind::BudgetExceeded, "chart enumeration over F_" + std::to_string(p) + " exceeds the budget");
  std::uint64_t count = 0;
  for (int i = 0; i < m; ++i) {
    const int free = m - 1 - i;
    const std::uint64_t prefixes = ipow(p, free);
#pragma omp parallel for schedule(static) reduction(+ : count)
    for (std::uint64_t idx = 0; idx < prefixes; ++idx) {
      std::vector<std::uint64_t> x(nvars, 0);
      x[i] = 1;
      std::uint64_t rest = idx;
      for (int v = i + 1; v < m; ++v) {
        x[v] = rest % p;
        rest /= p;
      }
      count += visit(x, m);
    }
  }
  return count;
}

std::uint64_t count_fp_chart(const HomogeneousForm& f, std::uint64_t p, std::uint64_t budget) {
  const auto terms = mod_terms(f, p);
  const int nv = f.nvars();
  std::uint64_t count = for_each_chart_prefix(nv, p, budget, [&](const std::vector<std::uint64_t>& x, int last) {
    return count_roots(slice_poly(terms, x, last, f.degree(), p), p);
  });
  // The point (0:...:0:1).
  std::vector<int> top(nv, 0);
  top[nv - 1] = f.degree();
  BigInt c = 0;
  for (const auto& t : f.terms())
    if (t.exponents == top) c = t.coeff;
  if (mod_of(c, p) == 0) ++count;
  return count;
}

bool quadric_smooth(const HomogeneousForm& f, std::uint64_t p) {
  const int n = f.nvars();
  std::vector<std::vector<std::uint64_t>> A(n, std::vector<std::uint64_t>(n, 0));
  for (const auto& t : f.terms()) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < t.exponents[i]; ++k) idx.push_back(i);
    const std::uint64_t c = mod_of(t.coeff, p);
    if (idx[0] == idx[1]) {
      A[idx[0]][idx[0]] = mulmod(2, c, p);
    } else {
      A[idx[0]][idx[1]] = c;
      A[idx[1]][idx[0]] = c;
    }
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (A[r][col]) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    std::swap(A[piv], A[col]);
    const std::uint64_t inv = powmod(A[col][col], p - 2, p);
    for (int r = col + 1; r < n; ++r) {
      const std::uint64_t fac = mulmod(A[r][col], inv, p);
      if (!fac) continue;
      for (int k = col; k < n; ++k) A[r][k] = (A[r][k] + p - mulmod(fac, A[col][k], p)) % p;
    }
  }
  return true;
}

// Histogram of a x^d mod q over x in [0, q), or over multiples of p only.
std::vector<std::uint64_t> power_histogram(std::uint64_t a, int d, std::uint64_t q, std::uint64_t step) {
  std::vector<std::uint64_t> h(q, 0);
  for (std::uint64_t x = 0; x < q; x += step) h[mulmod(a, powmod(x, d, q), q)]++;
  return h;
}

std::uint64_t diagonal_zero_count(const std::vector<std::uint64_t>& a, int d, std::uint64_t q, std::uint64_t step) {
  std::vector<std::uint64_t> acc = power_histogram(a[0], d, q, step);
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    const auto h = power_histogram(a[i], d, q, step);
    std::vector<std::uint64_t> next(q, 0);
#pragma omp parallel for schedule(static)
    for (std::uint64_t s = 0; s < q; ++s) {
      std::uint64_t v = 0;
      for (std::uint64_t u = 0; u < q; ++u)
        if (h[u]) v += acc[(s + q - u) % q] * h[u];
      next[s] = v;
    }
    acc = std::move(next);
  }
  const auto h = power_histogram(a.back(), d, q, step);
  std::uint64_t total = 0;
  for (std::uint64_t u = 0; u < q; ++u) total += acc[(q - u) % q] * h[u];
  return total;
}

// Primitive affine solutions mod p^r by Hensel lifting from F_p.
BigInt lift_count(const HomogeneousForm& f, std::uint64_t p, int r, std::uint64_t budget) {
  const int nv = f.nvars();
  if (log_ipow(p, nv) > std::log(static_cast<double>(budget)))
    throw Error(ErrorKind::BudgetExceeded, "lifting engine: F_p enumeration exceeds the budget");
  const CompiledForm cf(f);
  std::vector<CompiledForm> grads;
  for (int i = 0; i < nv; ++i)
    if (auto g = f.derivative(i)) grads.emplace_back(*g);
  std::vector<std::vector<std::uint64_t>> grads_p;
  for (const auto& g : grads) grads_p.push_back(g.coeffs_mod(p));

  std::vector<std::uint64_t> pk(r + 2, 1);
  for (int k = 1; k <= r + 1; ++k) pk[k] = pk[k - 1] * p;
  std::vector<std::vector<std::uint64_t>> cmod(r + 2);
  for (int k = 1; k <= r + 1; ++k) cmod[k] = cf.coeffs_mod(pk[k]);

  const BigInt smooth_lifts = mp::pow(BigInt(p), static_cast<unsigned>((nv - 1) * (r - 1)));
  BigInt total = 0;
  std::uint64_t smooth = 0;
  std::atomic<std::uint64_t> nodes{0};
  std::vector<std::vector<std::uint64_t>> singular;

  const std::uint64_t start = ipow(p, nv);
  std::vector<std::uint64_t> x(nv);
  for (std::uint64_t idx = 0; idx < start; ++idx) {
    std::uint64_t rest = idx;
    bool primitive = false;
    for (int i = 0; i < nv; ++i) {
      x[i] = rest % p;
      rest /= p;
      primitive |= x[i] != 0;
    }
    if (!primitive || cf.eval_mod(x.data(), cmod[1], p) != 0) continue;
    bool smooth_pt = false;
    for (std::size_t g = 0; g < grads.size() && !smooth_pt; ++g) smooth_pt = grads[g].eval_mod(x.data(), grads_p[g], p) != 0;
    if (smooth_pt)
      ++smooth;
    else
      singular.push_back(x);
  }
  total += smooth_lifts * smooth;

  // Singular points: f(x + p^k t) ≡ f(x) mod p^{k+1}, so each level is all-or-nothing.
  std::function<std::uint64_t(std::vector<std::uint64_t>&, int)> descend = [&](std::vector<std::uint64_t>& y, int k) -> std::uint64_t {
    if (++nodes > budget) throw Error(ErrorKind::BudgetExceeded, "lifting engine exceeded its node budget");
    if (k == r) return 1;
    if (cf.eval_mod(y.data(), cmod[k + 1], pk[k + 1]) != 0) return 0;
    std::uint64_t sum = 0;
    const std::uint64_t lifts = ipow(p, nv);
    std::vector<std::uint64_t> z(nv);
    for (std::uint64_t t = 0; t < lifts; ++t) {
      std::uint64_t rest = t;
      for (int i = 0; i < nv; ++i) {
        z[i] = y[i] + pk[k] * (rest % p);
        rest /= p;
      }
      sum += descend(z, k + 1);
    }
    return sum;
  };
  for (auto& s : singular) total += descend(s, 1);
  return total;
}

BigInt projective_space_count(int m, std::uint64_t p, int r) {
  BigInt pi = 0, pw = 1;
  for (int i = 0; i <= m; ++i) {
    pi += pw;
    pw *= p;
  }
  return mp::pow(BigInt(p), static_cast<unsigned>((r - 1) * m)) * pi;
}

BigInt units_mod(std::uint64_t p, int r) { return mp::pow(BigInt(p), static_cast<unsigned>(r - 1)) * (p - 1); }

BigInt count_with_method(const Variety& X, std::uint64_t p, int r, const CountOptions& opts, std::string& method) {
  if (r < 1) throw Error(ErrorKind::InvalidInput, "exponent r must be >= 1");
  if (!is_prime(p)) throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
  if (X.is_projective_space()) {
    method = "closed form";
    return projective_space_count(X.nvars - 1, p, r);
  }
  if (log_ipow(p, r) > std::log(static_cast<double>(opts.max_modulus)) || log_ipow(p, r + 1) > 61 * std::log(2.0))
    throw Error(ErrorKind::BudgetExceeded, "modulus " + std::to_string(p) + "^" + std::to_string(r) + " beyond the configured limit");
  const HomogeneousForm& f = *X.form;
  const std::uint64_t q = ipow(p, r);
  const auto diag = f.diagonal_coefficients();
  if (diag && q <= 4096 && log_ipow(q, X.nvars) < 62 * std::log(2.0)) {
    method = "diagonal histogram";
    std::vector<std::uint64_t> a;
    for (const auto& c : *diag) a.push_back(mod_of(c, q));
    const std::uint64_t all = diagonal_zero_count(a, f.degree(), q, 1);
    const std::uint64_t imprimitive = diagonal_zero_count(a, f.degree(), q, p);
    return BigInt(all - imprimitive) / units_mod(p, r);
  }
  if (r == 1) {
    method = "chart enumeration";
    return count_fp_chart(f, p, opts.budget);
  }
  method = "hensel lifting";
  return lift_count(f, p, r, opts.budget) / units_mod(p, r);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<char> sieve(n + 1, 1);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) sieve[j] = 0;
  }
  return out;
}

BigInt count_projective_mod(const Variety& X, std::uint64_t p, int r, const CountOptions& opts) {
  std::string method;
  return count_with_method(X, p, r, opts, method);
}

BigInt count_primitive_affine_bruteforce(const Variety& X, std::uint64_t p, int r) {
  if (X.is_projective_space()) {
    const BigInt q = mp::pow(BigInt(p), static_cast<unsigned>(r));
    return mp::pow(q, static_cast<unsigned>(X.nvars)) - mp::pow(q / p, static_cast<unsigned>(X.nvars));
  }
  return kernels::count_primitive_mod(CompiledForm(*X.form), p, r);
}

bool good_reduction_diag(const DiagonalForm& f, std::uint64_t p) {
  if (f.d() % static_cast<long long>(p) == 0) return false;
  for (const auto& a : f.a())
    if (a % p == 0) return false;
  return true;
}

bool good_reduction(const Variety& X, std::uint64_t p, const CountOptions& opts) {
  if (X.is_projective_space()) return true;
  if (X.diagonal) return good_reduction_diag(*X.diagonal, p);
  const HomogeneousForm& f = *X.form;
  if (auto diag = f.diagonal_coefficients()) {
    bool ok = f.degree() % static_cast<long long>(p) != 0;
    for (const auto& a : *diag) ok = ok && a % p != 0;
    if (ok) return true;
  }
  if (f.degree() == 2 && p > 2) return quadric_smooth(f, p);

  std::vector<std::vector<ModTerm>> polys{mod_terms(f, p)};
  std::vector<int> degrees{f.degree()};
  for (int i = 0; i < f.nvars(); ++i)
    if (auto g = f.derivative(i)) {
      polys.push_back(mod_terms(*g, p));
      degrees.push_back(g->degree());
    }
  std::atomic<bool> singular{false};
  for_each_chart_prefix(f.nvars(), p, opts.budget, [&](const std::vector<std::uint64_t>& x, int last) -> std::uint64_t {
    if (singular.load(std::memory_order_relaxed)) return 0;
    Poly g;
    for (std::size_t k = 0; k < polys.size(); ++k) g = poly_gcd(g, slice_poly(polys[k], x, last, degrees[k], p), p);
    if (g.empty() || count_roots(g, p) > 0) singular = true;
    return 0;
  });
  if (singular) return false;
  std::vector<std::uint64_t> top(f.nvars(), 0);
  top.back() = 1;
  for (const auto& terms : polys) {
    std::uint64_t v = 0;
    for (const auto& t : terms) {
      bool pure = true;
      for (int i = 0; i + 1 < f.nvars(); ++i) pure = pure && t.e[i] == 0;
      if (pure) v = (v + t.coeff) % p;
    }
    if (v) return true;
  }
  return false;
}

LocalDensity local_density(const Variety& X, std::uint64_t p, int r_max, const CountOptions& opts) {
  LocalDensity out;
  out.p = p;
  const int n = X.dim();
  auto mu_of = [&](const BigInt& count, int r) {
    return Rational(count, mp::pow(BigInt(p), static_cast<unsigned>(r * n)));
  };
  out.good_reduction = good_reduction(X, p, opts);
  if (out.good_reduction) {
    out.count = count_with_method(X, p, 1, opts, out.method);
    out.r_used = 1;
    out.mu_p = mu_of(out.count, 1);
    out.stabilized = true;
    return out;
  }
  BigInt prev_count = count_with_method(X, p, 1, opts, out.method);
  Rational prev = mu_of(prev_count, 1);
  out.count = prev_count;
  out.mu_p = prev;
  out.r_used = 1;
  for (int r = 2; r <= r_max; ++r) {
    std::string method;
    const BigInt c = count_with_method(X, p, r, opts, method);
    const Rational mu = mu_of(c, r);
    if (mu == prev) {
      out.stabilized = true;
      return out;
    }
    prev = mu;
    out.count = c;
    out.mu_p = mu;
    out.r_used = r;
    out.method = method;
  }
  return out;
}

EulerProductReport euler_product(const Variety& X, std::uint64_t P_max, int r_max, const CountOptions& opts) {
  if (P_max < 2) throw Error(ErrorKind::InvalidInput, "P_max must be >= 2");
  EulerProductReport rep;
  rep.P_max = P_max;
  const auto primes = primes_up_to(P_max);
  rep.factors.resize(primes.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < primes.size(); ++i) {
    EulerFactor& f = rep.factors[i];
    f.p = primes[i];
    try {
      f.density = local_density(X, f.p, r_max, opts);
      f.factor = (1.0 - 1.0 / static_cast<double>(f.p)) * f.density.mu_p.convert_to<double>();
      if (!f.density.stabilized) {
        f.flagged = true;
        f.flag = "not stabilized by r=" + std::to_string(r_max);
      }
    } catch (const Error& e) {
      f.flagged = true;
      f.flag = e.what();
      f.factor = 1.0;
    }
  }
  double prod = 1.0;
  for (const auto& f : rep.factors) {
    prod *= f.factor;
    rep.partial_products.push_back(prod);
  }
  rep.tail_note = "primes above " + std::to_string(P_max) +
                  " omitted; each good factor is 1 + O(p^{-3/2}) once the (1 - 1/p) convergence factor is applied";
  return rep;
}

DeligneReport deligne_check(const Variety& X, std::uint64_t p) {
  if (!good_reduction(X, p)) throw Error(ErrorKind::BadReduction, "bad reduction at p = " + std::to_string(p));
  DeligneReport r;
  r.p = p;
  r.count = count_projective_mod(X, p, 1);
  const int n = X.dim();
  BigInt pw = 1;
  for (int i = 0; i <= n; ++i) {
    r.pi_n += pw;
    pw *= p;
  }
  const BigInt diff = mp::abs(r.count - r.pi_n);
  r.deviation = diff.convert_to<double>() / std::pow(static_cast<double>(p), n / 2.0);
  return r;
}

}  // namespace heightlab

#include "heightlab/forms.hpp"

#include <numeric>
#include <sstream>

namespace heightlab {

namespace mp = boost::multiprecision;

Polynomial Polynomial::variable(int nvars, int index) {
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::constant(int nvars, const BigInt& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

std::optional<int> Polynomial::homogeneous_degree() const {
  std::optional<int> d;
  for (const auto& [e, c] : terms_) {
    const int s = std::accumulate(e.begin(), e.end(), 0);
    if (d && *d != s) return std::nullopt;
    d = s;
  }
  return d;
}

int Polynomial::degree_in(int var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

void Polynomial::add_term(const Exponents& e, const BigInt& c) {
  if (static_cast<int>(e.size()) != nvars_)
    throw Error(ErrorKind::DimensionMismatch, "exponent vector length differs from variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial r = *this;
  for (const auto& [e, c] : other.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial r = *this;
  for (const auto& [e, c] : other.terms_) r.add_term(e, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (nvars_ != other.nvars_) throw Error(ErrorKind::DimensionMismatch, "polynomial variable counts differ");
  Polynomial r(nvars_);
  Exponents e(nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : other.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    f[var] -= 1;
    r.add_term(f, c * e[var]);
  }
  return r;
}

BigInt Polynomial::eval(std::span<const BigInt> x) const {
  if (static_cast<int>(x.size()) != nvars_)
    throw Error(ErrorKind::DimensionMismatch, "point has " + std::to_string(x.size()) + " coordinates, form has " +
                                                  std::to_string(nvars_) + " variables");
  BigInt sum = 0;
  for (const auto& [e, c] : terms_) {
    BigInt t = c;
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) t *= mp::pow(x[i], static_cast<unsigned>(e[i]));
    sum += t;
  }
  return sum;
}

HomogeneousForm HomogeneousForm::make(int nvars, const std::vector<Term>& terms) {
  if (nvars < 1) throw Error(ErrorKind::InvalidInput, "form needs at least one variable");
  Polynomial p(nvars);
  std::optional<int> degree;
  std::map<Exponents, bool> seen;
  for (const auto& t : terms) {
    if (static_cast<int>(t.exponents.size()) != nvars)
      throw Error(ErrorKind::DimensionMismatch, "term exponent vector has wrong length");
    for (int e : t.exponents)
      if (e < 0) throw Error(ErrorKind::InvalidInput, "negative exponent");
    const int s = std::accumulate(t.exponents.begin(), t.exponents.end(), 0);
    if (degree && *degree != s) throw Error(ErrorKind::InvalidInput, "terms of different degree: form is not homogeneous");
    degree = s;
    if (!seen.emplace(t.exponents, true).second)
      throw Error(ErrorKind::InvalidInput, "duplicate exponent vector in form");
    p.add_term(t.exponents, t.coeff);
  }
  if (p.is_zero()) throw Error(ErrorKind::InvalidInput, "form has no nonzero coefficient");
  if (*degree < 1) throw Error(ErrorKind::InvalidInput, "form degree must be positive");
  return HomogeneousForm(std::move(p), *degree);
}

HomogeneousForm HomogeneousForm::from_polynomial(const Polynomial& p) {
  const auto d = p.homogeneous_degree();
  if (!d) throw Error(ErrorKind::InvalidInput, "polynomial is zero or not homogeneous");
  if (*d < 1) throw Error(ErrorKind::InvalidInput, "form degree must be positive");
  return HomogeneousForm(p, *d);
}

std::vector<Term> HomogeneousForm::terms() const {
  std::vector<Term> out;
  for (const auto& [e, c] : poly_.terms()) out.push_back({e, c});
  return out;
}

BigInt HomogeneousForm::eval(std::span<const BigInt> x) const { return poly_.eval(x); }

BigInt HomogeneousForm::eval(std::span<const std::int64_t> x) const {
  std::vector<BigInt> b(x.begin(), x.end());
  return poly_.eval(b);
}

HomogeneousForm HomogeneousForm::operator*(const HomogeneousForm& other) const {
  return from_polynomial(poly_ * other.poly_);
}

HomogeneousForm HomogeneousForm::scaled(const BigInt& c) const {
  if (c == 0) throw Error(ErrorKind::InvalidInput, "scaling a form by zero");
  return from_polynomial(poly_ * Polynomial::constant(nvars(), c));
}

HomogeneousForm HomogeneousForm::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != nvars()) throw Error(ErrorKind::DimensionMismatch, "permutation length");
  Polynomial r(nvars());
  for (const auto& [e, c] : poly_.terms()) {
    Exponents f(nvars());
    for (int j = 0; j < nvars(); ++j) f[j] = e[perm[j]];
    r.add_term(f, c);
  }
  return from_polynomial(r);
}

HomogeneousForm HomogeneousForm::substitute_linear(const std::vector<std::vector<BigInt>>& M) const {
  const int n = nvars();
  if (static_cast<int>(M.size()) != n) throw Error(ErrorKind::DimensionMismatch, "substitution matrix rows");
  std::vector<Polynomial> images;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(M[i].size()) != n) throw Error(ErrorKind::DimensionMismatch, "substitution matrix cols");
    Polynomial li(n);
    for (int j = 0; j < n; ++j) {
      Exponents e(n, 0);
      e[j] = 1;
      li.add_term(e, M[i][j]);
    }
    images.push_back(std::move(li));
  }
  Polynomial r(n);
  for (const auto& [e, c] : poly_.terms()) {
    Polynomial t = Polynomial::constant(n, c);
    for (int i = 0; i < n; ++i)
      if (e[i]) t = t * images[i].pow(static_cast<unsigned>(e[i]));
    r = r + t;
  }
  return from_polynomial(r);
}

std::optional<HomogeneousForm> HomogeneousForm::derivative(int var) const {
  Polynomial p = poly_.derivative(var);
  if (p.is_zero()) return std::nullopt;
  return HomogeneousForm(std::move(p), degree_ - 1);
}

std::optional<std::vector<BigInt>> HomogeneousForm::diagonal_coefficients() const {
  std::vector<BigInt> a(nvars(), 0);
  for (const auto& [e, c] : poly_.terms()) {
    int var = -1;
    for (int i = 0; i < nvars(); ++i)
      if (e[i] == degree_) var = i;
    if (var < 0) return std::nullopt;
    a[var] = c;
  }
  return a;
}

std::string HomogeneousForm::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (auto it = poly_.terms().rbegin(); it != poly_.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    BigInt ac = mp::abs(c);
    out << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool any = false;
    if (ac != 1) {
      out << ac;
      any = true;
    }
    for (int i = 0; i < nvars(); ++i) {
      if (!e[i]) continue;
      out << (any ? "*" : "") << "x" << i;
      if (e[i] > 1) out << "^" << e[i];
      any = true;
    }
    if (!any) out << ac;
    first = false;
  }
  return out.str();
}

DiagonalForm DiagonalForm::make(int d, int n, std::vector<BigInt> a) {
  if (d < 1) throw Error(ErrorKind::InvalidInput, "diagonal form degree must be positive");
  if (n < 0) throw Error(ErrorKind::InvalidInput, "hypersurface dimension must be nonnegative");
  if (static_cast<int>(a.size()) != n + 2)
    throw Error(ErrorKind::DimensionMismatch, "diagonal form needs n+2 = " + std::to_string(n + 2) + " coefficients");
  for (const auto& c : a)
    if (c == 0) throw Error(ErrorKind::InvalidInput, "diagonal coefficients must be nonzero");
  return DiagonalForm(d, n, std::move(a));
}

DiagonalForm DiagonalForm::xa_family(int d, int n, const BigInt& a) {
  std::vector<BigInt> c(n + 2, 1);
  c[0] = -a;
  return make(d, n, std::move(c));
}

HomogeneousForm DiagonalForm::to_form() const {
  std::vector<Term> terms;
  for (int i = 0; i < n_ + 2; ++i) {
    Exponents e(n_ + 2, 0);
    e[i] = d_;
    terms.push_back({e, a_[i]});
  }
  return HomogeneousForm::make(n_ + 2, terms);
}

BigInt DiagonalForm::eval(std::span<const BigInt> x) const {
  if (static_cast<int>(x.size()) != n_ + 2) throw Error(ErrorKind::DimensionMismatch, "point length");
  BigInt s = 0;
  for (int i = 0; i < n_ + 2; ++i) s += a_[i] * mp::pow(x[i], static_cast<unsigned>(d_));
  return s;
}

CompiledForm::CompiledForm(const HomogeneousForm& f) : nvars_(f.nvars()), degree_(f.degree()) {
  for (const auto& [e, c] : f.poly().terms()) {
    exps_.insert(exps_.end(), e.begin(), e.end());
    coeffs_.push_back(c);
    if (mp::msb(mp::abs(c)) > 100) coeffs_small_ = false;
    coeffs_i128_.push_back(0);
  }
  for (std::size_t t = 0; t < coeffs_.size() && coeffs_small_; ++t) {
    const BigInt ac = mp::abs(coeffs_[t]);
    const unsigned __int128 lo = static_cast<std::uint64_t>(ac & BigInt(~0ULL));
    const unsigned __int128 hi = static_cast<std::uint64_t>(ac >> 64);
    __int128 v = static_cast<__int128>((hi << 64) | lo);
    coeffs_i128_[t] = coeffs_[t] < 0 ? -v : v;
  }
}

bool CompiledForm::fits_int128(std::int64_t bound) const {
  if (!coeffs_small_) return false;
  // Σ|c| * bound^d < 2^120.
  long double total = 0;
  for (const auto& c : coeffs_)
    total += std::abs(c.convert_to<long double>()) * std::pow(static_cast<long double>(bound), degree_);
  return total < std::ldexp(1.0L, 120);
}

__int128 CompiledForm::eval(const std::int64_t* x) const {
  __int128 sum = 0;
  const std::size_t T = coeffs_i128_.size();
  for (std::size_t t = 0; t < T; ++t) {
    __int128 v = coeffs_i128_[t];
    const int* e = &exps_[t * nvars_];
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) v *= x[i];
    sum += v;
  }
  return sum;
}

std::vector<std::uint64_t> CompiledForm::coeffs_mod(std::uint64_t q) const {
  std::vector<std::uint64_t> r;
  r.reserve(coeffs_.size());
  for (const auto& c : coeffs_) r.push_back(mod_of(c, q));
  return r;
}

std::uint64_t CompiledForm::eval_mod(const std::uint64_t* x, const std::vector<std::uint64_t>& cmod,
                                     std::uint64_t q) const {
  std::uint64_t sum = 0;
  for (std::size_t t = 0; t < cmod.size(); ++t) {
    std::uint64_t v = cmod[t];
    const int* e = &exps_[t * nvars_];
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) v = mulmod(v, x[i], q);
    sum += v;
    if (sum >= q) sum -= q;
  }
  return sum;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  a %= q;
  while (e) {
    if (e & 1u) r = mulmod(r, a, q);
    a = mulmod(a, a, q);
    e >>= 1u;
  }
  return r;
}

std::uint64_t mod_of(const BigInt& c, std::uint64_t q) {
  BigInt r = c % q;
  if (r < 0) r += q;
  return static_cast<std::uint64_t>(r);
}

}  // namespace heightlab

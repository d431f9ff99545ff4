#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heightlab/core.hpp"

namespace heightlab {

using Exponents = std::vector<int>;

struct Term {
  Exponents exponents;
  BigInt coeff;
};

/// Sparse multivariate polynomial over Z in a fixed number of variables.
class Polynomial {
 public:
  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}
  static Polynomial variable(int nvars, int index);
  static Polynomial constant(int nvars, const BigInt& c);

  int nvars() const { return nvars_; }
  const std::map<Exponents, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Degree of every term if all agree, otherwise nullopt. Empty -> nullopt.
  std::optional<int> homogeneous_degree() const;
  int degree_in(int var) const;

  void add_term(const Exponents& e, const BigInt& c);
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial pow(unsigned k) const;
  Polynomial derivative(int var) const;
  BigInt eval(std::span<const BigInt> x) const;

 private:
  int nvars_;
  std::map<Exponents, BigInt> terms_;
};

class DiagonalForm;

/// Homogeneous integer form of degree d in m+1 variables.
///
/// Invariants: every exponent vector sums to d, exponent vectors are
/// distinct and at least one coefficient is nonzero.
class HomogeneousForm {
 public:
  static HomogeneousForm make(int nvars, const std::vector<Term>& terms);
  static HomogeneousForm from_polynomial(const Polynomial& p);

  int degree() const { return degree_; }
  int nvars() const { return poly_.nvars(); }
  const Polynomial& poly() const { return poly_; }
  std::vector<Term> terms() const;

  BigInt eval(std::span<const BigInt> x) const;
  BigInt eval(std::span<const std::int64_t> x) const;

  HomogeneousForm operator*(const HomogeneousForm& other) const;
  HomogeneousForm scaled(const BigInt& c) const;
  // Variable j of the result is variable perm[j] of this form.
  HomogeneousForm permuted(std::span<const int> perm) const;
  // f(M x): old variable i becomes Σ_j M[i][j] x_j.
  HomogeneousForm substitute_linear(const std::vector<std::vector<BigInt>>& M) const;
  // The derivative with respect to var, or nullopt when it vanishes.
  std::optional<HomogeneousForm> derivative(int var) const;
  // Per-variable coefficients when every term is a pure d-th power.
  std::optional<std::vector<BigInt>> diagonal_coefficients() const;

  std::string to_string() const;
  friend bool operator==(const HomogeneousForm& a, const HomogeneousForm& b) {
    return a.degree_ == b.degree_ && a.poly_.nvars() == b.poly_.nvars() && a.poly_.terms() == b.poly_.terms();
  }

 private:
  HomogeneousForm(Polynomial p, int d) : poly_(std::move(p)), degree_(d) {}
  Polynomial poly_;
  int degree_ = 0;
};

/// Σ_{i=0}^{n+1} a_i x_i^d cutting out an n-dimensional hypersurface of P^{n+1}.
class DiagonalForm {
 public:
  static DiagonalForm make(int d, int n, std::vector<BigInt> a);
  // -a x_0^d + x_1^d + ... + x_{n+1}^d.
  static DiagonalForm xa_family(int d, int n, const BigInt& a);

  int d() const { return d_; }
  int n() const { return n_; }
  const std::vector<BigInt>& a() const { return a_; }
  bool is_fano() const { return d_ <= n_ + 1; }
  // -K_X = O(n + 2 - d) by adjunction.
  int anticanonical_twist() const { return n_ + 2 - d_; }
  HomogeneousForm to_form() const;
  BigInt eval(std::span<const BigInt> x) const;

  friend bool operator==(const DiagonalForm&, const DiagonalForm&) = default;

 private:
  DiagonalForm(int d, int n, std::vector<BigInt> a) : d_(d), n_(n), a_(std::move(a)) {}
  int d_;
  int n_;
  std::vector<BigInt> a_;
};

/// Flattened form for hot loops: exact evaluation at small integer points and
/// evaluation modulo q < 2^62.
class CompiledForm {
 public:
  CompiledForm() = default;
  explicit CompiledForm(const HomogeneousForm& f);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  std::size_t num_terms() const { return coeffs_.size(); }
  // True when every |f(x)| with max|x_i| <= bound fits comfortably in int128.
  bool fits_int128(std::int64_t bound) const;
  __int128 eval(const std::int64_t* x) const;
  // Coefficients reduced modulo q; evaluation takes residues in [0, q).
  std::vector<std::uint64_t> coeffs_mod(std::uint64_t q) const;
  std::uint64_t eval_mod(const std::uint64_t* x, const std::vector<std::uint64_t>& cmod, std::uint64_t q) const;
  const std::vector<int>& exponents() const { return exps_; }
  const std::vector<__int128>& coeffs_i128() const { return coeffs_i128_; }

 private:
  int nvars_ = 0;
  int degree_ = 0;
  std::vector<int> exps_;  // num_terms x nvars
  std::vector<BigInt> coeffs_;
  std::vector<__int128> coeffs_i128_;
  bool coeffs_small_ = true;
};

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q);
std::uint64_t mod_of(const BigInt& c, std::uint64_t q);

}  // namespace heightlab

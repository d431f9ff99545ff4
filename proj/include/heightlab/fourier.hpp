#pragma once

#include <string>
#include <vector>

namespace heightlab {

/// Real trigonometric polynomial v(θ) = a0 + Σ_k a_k cos kθ + b_k sin kθ on
/// the unit circle, together with its harmonic extension to the unit disc,
/// ṽ(r, θ) = a0 + Σ_k r^k (a_k cos kθ + b_k sin kθ).
struct FourierFunction {
  double a0 = 0.0;
  std::vector<double> a;  // a[k-1] multiplies cos kθ
  std::vector<double> b;  // b[k-1] multiplies sin kθ

  static FourierFunction constant(double c) { return {c, {}, {}}; }
  // Parses "a0,a1,b1,a2,b2,...".
  static FourierFunction parse(const std::string& text);

  int order() const;
  double value(double theta) const { return extension(1.0, theta); }
  double extension(double r, double theta) const;
  // Gradient of the harmonic extension in polar form: (∂_r ṽ, r^{-1} ∂_θ ṽ).
  void extension_gradient(double r, double theta, double& d_r, double& d_theta_over_r) const;
  bool conjugation_invariant() const;
};

}  // namespace heightlab

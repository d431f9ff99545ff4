#pragma once

// Quantities on P^1: Monge-Ampère energy, heights of metrized O(1) and -K,
// anticanonical masses, the arithmetic Ding functional and the
// Moser-Trudinger functional on the circle.
//
// A metric ψ on O(1) has local weight ψ(z) = base(z) + u(z) + λ on the chart
// z, with base log(1+|z|²) (Fubini-Study) or log max(1,|z|²) (Weil). The
// anticanonical metric is φ = 2ψ on -K = O(2).
//
// Integrals over P^1 are split into the unit disc in z and the unit disc in
// ζ = 1/conj(z). On either disc the base weight reads log(1+ρ²) (FS) or 0
// (Weil), so the Weil kink sits on the common boundary circle.

#include <optional>
#include <vector>

#include "heightlab/fourier.hpp"
#include "heightlab/numerics.hpp"
#include "heightlab/reports.hpp"

namespace heightlab::p1 {

enum class Base { FubiniStudy, Weil };

/// u = Σ_k c_k t^k with t = (|z|²-1)/(|z|²+1), smooth on the whole sphere.
struct RadialProfile {
  std::vector<double> c;
  bool empty() const { return c.empty(); }
  double value(double t) const;
  double derivative(double t) const;
};

struct Metric {
  Base base = Base::FubiniStudy;
  RadialProfile radial;
  // Perturbation with dd^c supported on the unit circle: the harmonic
  // extension of the Fourier data inside the disc, reflected outside.
  std::optional<FourierFunction> harmonic;
  double shift = 0.0;

  static Metric fubini_study(double shift = 0.0) { return {Base::FubiniStudy, {}, {}, shift}; }
  static Metric weil(double shift = 0.0) { return {Base::Weil, {}, {}, shift}; }
  Metric shifted(double lambda) const {
    Metric m = *this;
    m.shift += lambda;
    return m;
  }
  // Shift Λ of the anticanonical metric 2ψ, i.e. Λ/2 on ψ.
  Metric anticanonical_shifted(double Lambda) const { return shifted(Lambda / 2); }

  // Unshifted weight on disc chart (0: z, 1: ζ) at polar point (ρ, θ).
  double chart_weight(int chart, double rho, double theta) const;
  // Unshifted perturbation u on disc chart.
  double chart_perturbation(int chart, double rho, double theta) const;
  // Polar gradient (∂_ρ, ρ^{-1}∂_θ) of the chart weight or perturbation.
  void chart_weight_gradient(int chart, double rho, double theta, double& dr, double& dt) const;
  void chart_perturbation_gradient(int chart, double rho, double theta, double& dr, double& dt) const;
  int angular_order() const { return harmonic ? harmonic->order() : 0; }
};

struct QuadratureOptions {
  double tol = 1e-10;
  int initial_nodes = 16;
  int max_nodes = 4096;
};

struct EnergyReport {
  double value = 0.0;
  long quadrature_nodes = 0;
  double est_error = 0.0;
};

// E_{φ0}(φ) = (1/2)∫(φ-φ0)(dd^c φ + dd^c φ0).
EnergyReport energy_E(const Metric& phi, const Metric& phi0, const QuadratureOptions& opts = {});

struct HeightReport {
  double h_O1 = 0.0;            // h_ψ(O(1) on P^1_Z) = E(ψ, Weil)
  double h_anticanonical = 0.0;  // h_{2ψ}(-K) = 4 h_ψ(O(1))
  double h_normalized = 0.0;     // ĥ = h(-K) / ((n+1)! vol), vol(-K) = 2
  double est_error = 0.0;
  long nodes = 0;
};
HeightReport metric_height_p1(const Metric& psi, const QuadratureOptions& opts = {});

// ∫_{P^1(C)} e^{-2ψ} (i/2)dz∧dz̄.
Estimate complex_mass_p1(const Metric& psi, const QuadratureOptions& opts = {});
// ∫_{P^1(R)} e^{-ψ} dx.
Estimate real_mass_p1(const Metric& psi, const QuadratureOptions& opts = {});
// -2 h_φ(-K)/(n+1)! - vol(-K) log ∫ μ_φ with φ = 2ψ.
Estimate ding_arith(const Metric& psi, const QuadratureOptions& opts = {});
// ĥ_φ(-K) + log ∫_{P^1(R)} μ_φ against log 2π.
InequalityReport real_theorem_functional(const Metric& psi, const QuadratureOptions& opts = {});

// (1/2π)∫_D |∇ṽ|² = (1/2) Σ k (a_k² + b_k²).
double dirichlet_energy(const FourierFunction& v);
// -(1/4π)∫_D|∇ṽ|² + ∫v dθ/2π + log ∫e^{-v} dθ/2π; nonpositive, zero for constants.
Estimate mt_functional(const FourierFunction& v, double tol = 1e-15);
// v_t with e^{-v_t}dθ the pullback of dθ under z -> (z - t)/(1 - t z).
FourierFunction mobius_equality_family(double t);

struct RotationCase {
  std::string name;
  double lhs = 0.0;  // ∫_R e^{-u} (1+x²)^{-1} dx
  double rhs = 0.0;  // (1/2)∫_{S^1} e^{-u∘T^{-1}} dθ
};
struct RotationReport {
  std::vector<RotationCase> cases;
  double max_deviation = 0.0;          // over the battery
  double max_measure_deviation = 0.0;  // |dx/dθ|/(1+x²) against 1/2
};
// T = (1/√2)[[1, i], [i, 1]] carries P^1(R) to the unit circle.
RotationReport su2_rotation_check();

}  // namespace heightlab::p1

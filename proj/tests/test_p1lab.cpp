#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gsl/gsl_integration.h>

#include <cmath>
#include <functional>
#include <random>

#include "heightlab/p1lab.hpp"
#include "heightlab/verdict.hpp"

using namespace heightlab;
using namespace heightlab::p1;

namespace {

double integrate(const std::function<double(double)>& f, double lo, double hi = INFINITY) {
  gsl_integration_workspace* w = gsl_integration_workspace_alloc(2000);
  gsl_function F;
  F.function = [](double x, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(x); };
  F.params = const_cast<std::function<double(double)>*>(&f);
  double r = 0, err = 0;
  if (std::isinf(hi)) gsl_integration_qagiu(&F, lo, 1e-13, 1e-13, 2000, w, &r, &err);
  else gsl_integration_qags(&F, lo, hi, 1e-13, 1e-13, 2000, w, &r, &err);
  gsl_integration_workspace_free(w);
  return r;
}

// Radial metric log(1+r^2) + Σ c_k t^k with t = (r^2-1)/(r^2+1).
double radial_psi(double r, const std::vector<double>& c) {
  const double t = (r * r - 1) / (r * r + 1);
  double u = 0, tk = 1;
  for (double ck : c) u += ck * tk, tk *= t;
  return std::log1p(r * r) + u;
}

Metric radial(std::vector<double> c) {
  Metric m = Metric::fubini_study();
  m.radial.c = std::move(c);
  return m;
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("energy oracle for FS against Weil") {
  // ddc of the FS weight is dA/(π(1+r²)²); ddc of the Weil weight is the unit circle measure.
  const double I = integrate([](double t) { return (std::log1p(t) - std::log(std::max(1.0, t))) / ((1 + t) * (1 + t)); }, 0);
  CHECK(I == doctest::Approx(1 - std::log(2.0)).epsilon(1e-11));
  const double oracle = 0.5 * (I + std::log(2.0));
  const auto e = energy_E(Metric::fubini_study(), Metric::weil());
  CHECK(e.value == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(std::abs(e.value - 0.5) < 1e-10);
  CHECK(energy_E(Metric::weil(), Metric::weil()).value == 0.0);
  CHECK(std::abs(energy_E(Metric::fubini_study(), Metric::fubini_study()).value) < 1e-14);
}

TEST_CASE("energy of a constant shift") {
  for (double lam : {-1.5, 0.3, 2.0}) {
    CHECK(energy_E(Metric::weil(lam), Metric::weil()).value == doctest::Approx(lam).epsilon(1e-14));
    CHECK(energy_E(Metric::fubini_study(lam), Metric::fubini_study()).value == doctest::Approx(lam).epsilon(1e-12));
  }
}

TEST_CASE("energy cocycle") {
  Metric a = radial({0.0, 0.4, -0.2});
  Metric b = Metric::weil();
  b.harmonic = FourierFunction{0.1, {0.3, 0.0}, {0.0, -0.2}};
  const Metric c = Metric::fubini_study(0.7);
  const double ab = energy_E(a, b).value, bc = energy_E(b, c).value, ac = energy_E(a, c).value;
  CHECK(ab + bc == doctest::Approx(ac).epsilon(1e-9));
  CHECK(energy_E(b, a).value == doctest::Approx(-ab).epsilon(1e-9));
}

TEST_CASE("heights of metrized O(1) and -K") {
  const auto fs = metric_height_p1(Metric::fubini_study());
  CHECK(fs.h_O1 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(fs.h_anticanonical == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fs.h_normalized == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(metric_height_p1(Metric::weil()).h_O1 == 0.0);
  // Shift the anticanonical metric by log π so that its mass is one.
  const Metric vn = Metric::fubini_study().anticanonical_shifted(std::log(kPi));
  CHECK(complex_mass_p1(vn).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(metric_height_p1(vn).h_anticanonical == doctest::Approx(c_n_constant(1)).epsilon(1e-10));
}

TEST_CASE("masses against radial oracles") {
  CHECK(complex_mass_p1(Metric::fubini_study()).value == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(complex_mass_p1(Metric::weil()).value == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(real_mass_p1(Metric::fubini_study()).value == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(real_mass_p1(Metric::weil()).value == doctest::Approx(4.0).epsilon(1e-12));
  for (double lam : {-0.7, 1.3}) {
    CHECK(complex_mass_p1(Metric::fubini_study(lam)).value == doctest::Approx(std::exp(-2 * lam) * kPi).epsilon(1e-12));
    CHECK(real_mass_p1(Metric::fubini_study(lam)).value == doctest::Approx(std::exp(-lam) * kPi).epsilon(1e-12));
  }
  for (const std::vector<double>& c : {std::vector<double>{0.3}, {0.0, 0.5}, {0.2, -0.4, 0.3}}) {
    const double mc = 2 * kPi * integrate([&](double r) { return std::exp(-2 * radial_psi(r, c)) * r; }, 0);
    const double mr = 2 * integrate([&](double r) { return std::exp(-radial_psi(r, c)); }, 0);
    CHECK(complex_mass_p1(radial(c)).value == doctest::Approx(mc).epsilon(1e-10));
    CHECK(real_mass_p1(radial(c)).value == doctest::Approx(mr).epsilon(1e-10));
  }
}

TEST_CASE("real mass with a boundary perturbation") {
  Metric m = Metric::weil();
  m.harmonic = FourierFunction{0.2, {0.5, 0.1}, {0.0, 0.0}};
  // On the real line the perturbation is ṽ(|x|, θ) inside the disc and is
  // reflected through the circle outside.
  const auto& v = *m.harmonic;
  auto u = [&](double x) {
    const double r = std::abs(x), th = x < 0 ? kPi : 0.0;
    return r <= 1 ? v.extension(r, th) : v.extension(1 / r, th);
  };
  const double oracle = integrate([&](double x) { return std::exp(-u(x)); }, -1, 1) +
                        integrate([&](double x) { return std::exp(-u(x)) / (x * x); }, 1) +
                        integrate([&](double x) { return std::exp(-u(-x)) / (x * x); }, 1);
  CHECK(real_mass_p1(m).value == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("arithmetic Ding functional") {
  CHECK(ding_arith(Metric::fubini_study()).value == doctest::Approx(-2 * (1 + std::log(kPi))).epsilon(1e-10));
  CHECK(ding_arith(Metric::weil()).value == doctest::Approx(-2 * std::log(2 * kPi)).epsilon(1e-10));
  Metric m = radial({0.1, 0.3});
  const double d0 = ding_arith(m).value;
  for (double lam : {-2.0, 0.5, 3.0}) CHECK(ding_arith(m.shifted(lam)).value == doctest::Approx(d0).epsilon(1e-10));
  CHECK(d0 >= ding_arith(Metric::fubini_study()).value - 1e-9);
}

TEST_CASE("real theorem functional") {
  const auto fs = real_theorem_functional(Metric::fubini_study());
  CHECK(fs.lhs == doctest::Approx(0.5 + std::log(kPi)).epsilon(1e-10));
  CHECK(fs.rhs == doctest::Approx(std::log(2 * kPi)).epsilon(1e-15));
  CHECK(fs.verdict == Verdict::Satisfied);
  CHECK(real_theorem_functional(Metric::weil()).lhs == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  for (double lam : {-1.0, 2.5})
    CHECK(real_theorem_functional(Metric::fubini_study(lam)).lhs == doctest::Approx(fs.lhs).epsilon(1e-12));
}

TEST_CASE("Dirichlet energy against a disc grid") {
  auto grid = [](const FourierFunction& v) {
    // Centered finite differences of the harmonic extension on a polar grid.
    const int nr = 400, nt = 256;
    const double h = 1e-5;
    double acc = 0;
    for (int i = 0; i < nr; ++i) {
      const double r = (i + 0.5) / nr;
      for (int j = 0; j < nt; ++j) {
        const double th = 2 * kPi * j / nt;
        const double dr = (v.extension(std::min(r + h, 1.0), th) - v.extension(r - h, th)) / (std::min(r + h, 1.0) - (r - h));
        const double dt = (v.extension(r, th + h) - v.extension(r, th - h)) / (2 * h * r);
        acc += (dr * dr + dt * dt) * r;
      }
    }
    return acc * (1.0 / nr) * (2 * kPi / nt) / (2 * kPi);
  };
  const FourierFunction c1{0.0, {1.0}, {0.0}};
  CHECK(dirichlet_energy(c1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(grid(c1) == doctest::Approx(0.5).epsilon(1e-5));
  const FourierFunction c2{0.0, {1.0, 0.0}, {0.0, 1.0}};
  CHECK(dirichlet_energy(c2) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(grid(c2) == doctest::Approx(1.5).epsilon(1e-4));
  CHECK(dirichlet_energy(FourierFunction::constant(3.0)) == 0.0);
}

TEST_CASE("Moser-Trudinger functional") {
  CHECK(mt_functional(FourierFunction{}).value == 0.0);
  CHECK(std::abs(mt_functional(FourierFunction::constant(2.5)).value) < 1e-15);
  // Gradient term -(1/4π)∫|∇ṽ|² = -1/4 for cos θ.
  const double expect = -0.25 + std::log(std::cyl_bessel_i(0.0, 1.0));
  CHECK(mt_functional(FourierFunction{0.0, {1.0}, {0.0}}).value == doctest::Approx(expect).epsilon(1e-13));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> c(-1, 1);
  std::uniform_int_distribution<int> K(1, 8);
  for (int i = 0; i < 200; ++i) {
    FourierFunction v;
    v.a0 = c(rng);
    const int k = K(rng);
    for (int j = 0; j < k; ++j) v.a.push_back(c(rng)), v.b.push_back(c(rng));
    CHECK(mt_functional(v).value <= 1e-9);
  }
}

TEST_CASE("Möbius equality family") {
  const auto v0 = mobius_equality_family(0.0);
  CHECK(v0.a0 == 0.0);
  for (double a : v0.a) CHECK(a == 0.0);
  for (double t : {0.1, 0.5, 0.9}) {
    const auto v = mobius_equality_family(t);
    CHECK(v.a0 == doctest::Approx(-std::log(1 - t * t)).epsilon(1e-14));
    // e^{-v} dθ/2π is a probability measure: the Poisson kernel at t.
    const double mass = integrate([&](double th) { return (1 - t * t) / (1 - 2 * t * std::cos(th) + t * t); }, 0, 2 * kPi) / (2 * kPi);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(mt_functional(v).value) <= (t < 0.6 ? 1e-8 : 1e-6));
  }
  CHECK_THROWS_AS(mobius_equality_family(1.0), Error);
}

TEST_CASE("rotation carrying the real line to the circle") {
  const auto r = su2_rotation_check();
  CHECK(r.cases.size() >= 3);
  CHECK(r.max_deviation < 1e-8);
  CHECK(r.max_measure_deviation < 1e-12);
  for (const auto& c : r.cases)
    if (c.name == "u=0") CHECK(c.lhs == doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("quadrature failure is reported") {
  QuadratureOptions q;
  q.tol = 1e-15;
  q.initial_nodes = 4;
  q.max_nodes = 8;
  try {
    energy_E(radial({0.3, 0.9, -0.5, 0.7}), Metric::weil(), q);
    FAIL("expected QuadratureFailure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::QuadratureFailure);
  }
}

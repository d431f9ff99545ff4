#pragma once

#include <string>

#include "heightlab/forms.hpp"

namespace heightlab {

enum class MahlerMethod { Jensen, QMC };

/// Logarithmic Mahler measure against the probability Haar measure on the
/// torus, with the gap to log of the largest coefficient.
struct MahlerReport {
  double m = 0.0;
  double coeff_gap = 0.0;
  long nodes = 0;
  double est_error = 0.0;
  std::string method;
};

struct MahlerOptions {
  MahlerMethod method = MahlerMethod::Jensen;
  // Initial nodes per outer torus axis (Jensen) or sample count (QMC).
  long resolution = 64;
  double tol = 1e-7;
  long max_nodes = 1L << 24;
};

MahlerReport mahler_measure(const HomogeneousForm& f, const MahlerOptions& opts = {});
// The Weil-metric height of the hypersurface model cut out by f.
double hypersurface_weil_height(const HomogeneousForm& f, const MahlerOptions& opts = {});
// |m(f) - log max |a_i||.
double mahler_gap(const HomogeneousForm& f, const MahlerOptions& opts = {});

}  // namespace heightlab

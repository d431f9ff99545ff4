#pragma once

#include <optional>
#include <string>

#include "heightlab/forms.hpp"

namespace heightlab {

/// P^n itself or a hypersurface of P^{n+1} given by a form.
struct Variety {
  int nvars = 2;
  std::optional<HomogeneousForm> form;
  std::optional<DiagonalForm> diagonal;

  static Variety projective_space(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidInput, "projective space dimension must be >= 1");
    return {n + 1, {}, {}};
  }
  static Variety hypersurface(HomogeneousForm f) {
    Variety v{f.nvars(), std::move(f), {}};
    if (v.nvars < 2) throw Error(ErrorKind::InvalidInput, "hypersurface needs at least two variables");
    return v;
  }
  static Variety from_diagonal(const DiagonalForm& d) {
    Variety v = hypersurface(d.to_form());
    v.diagonal = d;
    return v;
  }

  bool is_projective_space() const { return !form.has_value(); }
  int dim() const { return form ? nvars - 2 : nvars - 1; }
  int degree() const { return form ? form->degree() : 0; }
  // -K = O(k): k = n+1 on P^n and n+2-d on a degree d hypersurface of P^{n+1}.
  int anticanonical_power() const { return form ? nvars - form->degree() : nvars; }
  std::string describe() const {
    if (!form) return "P^" + std::to_string(nvars - 1);
    return form->to_string() + " = 0 in P^" + std::to_string(nvars - 1);
  }
};

}  // namespace heightlab

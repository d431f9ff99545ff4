#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "heightlab/forms.hpp"
#include "heightlab/variety.hpp"

namespace testing_util {

using heightlab::BigInt;

inline heightlab::HomogeneousForm form(int nvars, std::initializer_list<std::pair<std::vector<int>, long>> terms) {
  std::vector<heightlab::Term> t;
  for (const auto& [e, c] : terms) t.push_back({e, BigInt(c)});
  return heightlab::HomogeneousForm::make(nvars, t);
}

inline heightlab::Variety hyper(int nvars, std::initializer_list<std::pair<std::vector<int>, long>> terms) {
  return heightlab::Variety::hypersurface(form(nvars, terms));
}

inline heightlab::DiagonalForm diag(int d, int n, std::initializer_list<long> a) {
  std::vector<BigInt> v;
  for (long x : a) v.push_back(BigInt(x));
  return heightlab::DiagonalForm::make(d, n, v);
}

}  // namespace testing_util

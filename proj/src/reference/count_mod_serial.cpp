#include "heightlab/kernels.hpp"

namespace heightlab::kernels::reference {

std::uint64_t count_primitive_mod_serial(const CompiledForm& f, std::uint64_t p, int r) {
  std::uint64_t q = 1;
  for (int k = 0; k < r; ++k) q *= p;
  const int nv = f.nvars();
  const auto cmod = f.coeffs_mod(q);
  std::vector<std::uint64_t> x(nv, 0);
  std::uint64_t count = 0;
  while (true) {
    bool primitive = false;
    for (int i = 0; i < nv; ++i) primitive |= x[i] % p != 0;
    if (primitive && f.eval_mod(x.data(), cmod, q) == 0) ++count;
    int i = nv - 1;
    while (i >= 0 && ++x[i] == q) x[i--] = 0;
    if (i < 0) break;
  }
  return count;
}

}  // namespace heightlab::kernels::reference

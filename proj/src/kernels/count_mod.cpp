#include <omp.h>

#include "heightlab/kernels.hpp"

namespace heightlab::kernels {

std::uint64_t count_primitive_mod(const CompiledForm& f, std::uint64_t p, int r, int shards) {
  std::uint64_t q = 1;
  for (int k = 0; k < r; ++k) q *= p;
  const int nv = f.nvars();
  const auto cmod = f.coeffs_mod(q);
  std::uint64_t rest_size = 1;
  for (int i = 1; i < nv; ++i) rest_size *= q;
  if (shards <= 0) shards = omp_get_max_threads();

  std::uint64_t count = 0;
#pragma omp parallel for num_threads(shards) schedule(dynamic) reduction(+ : count)
  for (std::uint64_t x0 = 0; x0 < q; ++x0) {
    std::vector<std::uint64_t> x(nv, 0);
    x[0] = x0;
    for (std::uint64_t idx = 0; idx < rest_size; ++idx) {
      std::uint64_t rest = idx;
      bool primitive = x0 % p != 0;
      for (int i = 1; i < nv; ++i) {
        x[i] = rest % q;
        rest /= q;
        primitive |= x[i] % p != 0;
      }
      if (primitive && f.eval_mod(x.data(), cmod, q) == 0) ++count;
    }
  }
  return count;
}

}  // namespace heightlab::kernels

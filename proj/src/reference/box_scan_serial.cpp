#include <algorithm>
#include <numeric>

#include "heightlab/box_scan.hpp"

namespace heightlab::kernels::reference {

ScanResult box_scan_serial(const ScanSpec& spec) {
  const int nv = spec.nvars;
  const std::int64_t M = spec.bound;
  std::vector<std::int64_t> x(nv, -M);
  ScanResult result;
  while (true) {
    int first = 0;
    while (first < nv && x[first] == 0) ++first;
    std::int64_t g = 0, mx = 0;
    for (int i = 0; i < nv; ++i) {
      const std::int64_t a = x[i] < 0 ? -x[i] : x[i];
      g = std::gcd(g, a);
      mx = std::max(mx, a);
    }
    bool ok = first < nv && x[first] > 0 && g == 1 && (!spec.shell || mx == M);
    if (ok && spec.form) ok = spec.form->eval(x.data()) == 0;
    if (ok && spec.exclusions)
      for (const auto& e : *spec.exclusions) ok = ok && !e.contains(x.data(), nv);
    if (ok) {
      const double key = norm_key(x.data(), nv, spec.key, spec.p);
      result.key_counts[key]++;
      if (spec.max_points) result.points.push_back({key, x});
    }
    int i = nv - 1;
    while (i >= 0 && ++x[i] > M) x[i--] = -M;
    if (i < 0) break;
  }
  std::sort(result.points.begin(), result.points.end());
  if (result.points.size() > spec.max_points) result.points.resize(spec.max_points);
  return result;
}

}  // namespace heightlab::kernels::reference

#pragma once

// Hot loops. Each parallel kernel has a serial reference twin used by the
// tests and by bench_kernels; both return identical exact results.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "heightlab/forms.hpp"

namespace heightlab::kernels {

// Mean of f over the tensor grid θ_l = 2π(j_l + 1/2)/n on T^dims, summed
// pairwise along the last axis and then across rows.
double torus_mean(int dims, int n, const std::function<double(const double*)>& f);
// Mean over the first `samples` points of the Weyl sequence {k·α} on T^dims.
double weyl_mean(int dims, long samples, const std::function<double(const double*)>& f);

// Number of x ∈ (Z/q)^m with f(x) ≡ 0 mod q that are primitive mod p,
// q = p^r. Exhaustive; sharded over the leading coordinate.
std::uint64_t count_primitive_mod(const CompiledForm& f, std::uint64_t p, int r, int shards = 0);

namespace reference {
std::uint64_t count_primitive_mod_serial(const CompiledForm& f, std::uint64_t p, int r);
}

}  // namespace heightlab::kernels

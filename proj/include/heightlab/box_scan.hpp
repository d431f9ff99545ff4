#pragma once

// Box scan over primitive integer tuples with canonical sign: the hot loop of
// point counting and minimal-point search.

#include <cstdint>
#include <map>
#include <vector>

#include "heightlab/enumerate.hpp"
#include "heightlab/forms.hpp"

namespace heightlab::kernels {

enum class NormKey { MaxAbs, SumSquares, PowerSum };

struct ScanSpec {
  int nvars = 2;
  std::int64_t bound = 1;  // max |x_i|
  bool shell = false;      // only tuples with max |x_i| == bound
  const CompiledForm* form = nullptr;
  std::vector<std::int64_t> diagonal;  // nonempty for diagonal forms
  const std::vector<Exclusion>* exclusions = nullptr;
  bool sieve = true;
  int shards = 0;
  NormKey key = NormKey::MaxAbs;
  double p = 2.0;
  std::size_t max_points = 0;  // collect up to this many points of least key
};

struct ScanPoint {
  double key;
  std::vector<std::int64_t> x;
  friend bool operator<(const ScanPoint& a, const ScanPoint& b) {
    return a.key != b.key ? a.key < b.key : a.x < b.x;
  }
};

struct ScanResult {
  std::map<double, std::uint64_t> key_counts;
  std::vector<ScanPoint> points;
  std::uint64_t prefixes = 0;
};

double norm_key(const std::int64_t* x, int nvars, NormKey key, double p);

ScanResult box_scan(const ScanSpec& spec);

namespace reference {
// Exhaustive scan of the whole box, no solving or sieving.
ScanResult box_scan_serial(const ScanSpec& spec);
}

}  // namespace heightlab::kernels

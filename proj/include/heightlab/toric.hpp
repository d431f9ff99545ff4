#pragma once

#include <string>
#include <vector>

#include "heightlab/core.hpp"

namespace heightlab {

using QVector = std::vector<Rational>;

/// Full-dimensional polytope in Q^n with its minimal vertex list and facets
/// a·x <= b (a primitive integral).
class LatticePolytope {
 public:
  static LatticePolytope make(const std::vector<QVector>& points);

  int dim() const { return dim_; }
  const std::vector<QVector>& vertices() const { return vertices_; }
  struct Facet {
    std::vector<BigInt> normal;
    Rational offset;
    std::vector<int> vertex_ids;
  };
  const std::vector<Facet>& facets() const { return facets_; }
  bool origin_in_interior() const;
  // Integer points of kP.
  std::vector<std::vector<BigInt>> lattice_points(int k = 1) const;
  // Simplices (vertex index lists) of a pulling triangulation.
  std::vector<std::vector<int>> triangulation() const;

 private:
  int dim_ = 0;
  std::vector<QVector> vertices_;
  std::vector<Facet> facets_;
};

struct ToricReport {
  Rational volume;
  QVector barycenter;
  Rational degree;  // n! vol
  bool kps = false;
  double bound_rhs = 0.0;
  double cn_over_factorial = 0.0;
};

ToricReport polytope_measure(const LatticePolytope& P);

// -(1/2) vol log(vol / (2π²)^n).
double universal_bound_rhs(const Rational& volume, int n);
double universal_bound_rhs(const LatticePolytope& P);

struct Binomial {
  std::vector<BigInt> plus;   // α+
  std::vector<BigInt> minus;  // α-
  std::string to_string() const;
};

enum class MarkerMode { Vertices, LatticePoints };

struct BinomialReport {
  std::vector<std::vector<BigInt>> markers;
  std::vector<Binomial> binomials;
  MarkerMode mode = MarkerMode::Vertices;
  std::string note;
};

BinomialReport canonical_model_binomials(const LatticePolytope& P, int k, MarkerMode mode = MarkerMode::Vertices);
// Integer kernel basis of an integer matrix (rows x cols), size reduced.
std::vector<std::vector<BigInt>> integer_kernel(const std::vector<std::vector<BigInt>>& A);

struct CatalogEntry {
  std::string name;
  LatticePolytope polytope;
};

struct GapRow {
  std::string name;
  Rational degree;
  bool kps = false;
};
struct GapTable {
  std::vector<GapRow> rows;  // degree descending
  bool projective_space_first = false;
  bool product_next_kps = false;  // P^{n-1} x P^1 (degree 2 n^n) is the largest kps entry below
};
GapTable gap_table(const std::vector<CatalogEntry>& catalog, int n);

}  // namespace heightlab

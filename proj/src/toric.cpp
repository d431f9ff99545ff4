#include "heightlab/toric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "heightlab/verdict.hpp"

namespace heightlab {

namespace mp = boost::multiprecision;

namespace {

using QMatrix = std::vector<QVector>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMatrix& A, int cols) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int c = 0; c < cols && row < A.size(); ++c) {
    std::size_t piv = row;
    while (piv < A.size() && A[piv][c] == 0) ++piv;
    if (piv == A.size()) continue;
    std::swap(A[piv], A[row]);
    const Rational inv = 1 / A[row][c];
    for (auto& v : A[row]) v *= inv;
    for (std::size_t r = 0; r < A.size(); ++r) {
      if (r == row || A[r][c] == 0) continue;
      const Rational f = A[r][c];
      for (int k = 0; k < cols; ++k) A[r][k] -= f * A[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

int affine_rank(const std::vector<QVector>& pts, const std::vector<int>& ids) {
  if (ids.size() <= 1) return 0;
  const int n = static_cast<int>(pts[ids[0]].size());
  QMatrix D;
  for (std::size_t i = 1; i < ids.size(); ++i) {
    QVector d(n);
    for (int k = 0; k < n; ++k) d[k] = pts[ids[i]][k] - pts[ids[0]][k];
    D.push_back(std::move(d));
  }
  return static_cast<int>(rref(D, n).size());
}

// Basis of {x : D x = 0}.
std::vector<QVector> nullspace(QMatrix D, int cols) {
  const auto pivots = rref(D, cols);
  std::vector<QVector> basis;
  for (int f = 0; f < cols; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    QVector v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -D[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<BigInt> primitive_integer(const QVector& v) {
  BigInt l = 1;
  for (const auto& q : v) {
    const BigInt d = mp::denominator(q);
    l = l / gcd(l, d) * d;
  }
  std::vector<BigInt> out;
  BigInt g = 0;
  for (const auto& q : v) {
    out.push_back(mp::numerator(q) * (l / mp::denominator(q)));
    g = gcd(g, out.back());
  }
  if (g != 0)
    for (auto& x : out) x /= g;
  return out;
}

Rational dot(const std::vector<BigInt>& a, const QVector& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * x[i];
  return s;
}

Rational det(QMatrix A) {
  const int n = static_cast<int>(A.size());
  Rational d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && A[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(A[piv], A[c]);
      d = -d;
    }
    d *= A[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (A[r][c] == 0) continue;
      const Rational f = A[r][c] / A[c][c];
      for (int k = c; k < n; ++k) A[r][k] -= f * A[c][k];
    }
  }
  return d;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt floor_q(const Rational& q) {
  BigInt n = mp::numerator(q), d = mp::denominator(q);
  BigInt r = n / d;
  if (r * d > n) r -= 1;
  return r;
}

BigInt ceil_q(const Rational& q) { return -floor_q(-q); }

}  // namespace

LatticePolytope LatticePolytope::make(const std::vector<QVector>& raw) {
  if (raw.empty()) throw Error(ErrorKind::Degenerate, "polytope with no points");
  const int n = static_cast<int>(raw[0].size());
  if (n < 1) throw Error(ErrorKind::Degenerate, "polytope in dimension 0");
  std::vector<QVector> pts;
  for (const auto& p : raw) {
    if (static_cast<int>(p.size()) != n) throw Error(ErrorKind::DimensionMismatch, "polytope points differ in dimension");
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  std::vector<int> all(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) all[i] = static_cast<int>(i);
  if (affine_rank(pts, all) < n) throw Error(ErrorKind::Degenerate, "polytope is not full-dimensional");

  // Facets: hyperplanes through n affinely independent points with all points on one side.
  std::map<std::pair<std::vector<BigInt>, Rational>, Facet> found;
  std::vector<int> pick(n);
  std::function<void(int, int)> choose = [&](int start, int depth) {
    if (depth == n) {
      if (affine_rank(pts, pick) != n - 1) return;
      QMatrix D;
      for (int i = 1; i < n; ++i) {
        QVector d(n);
        for (int k = 0; k < n; ++k) d[k] = pts[pick[i]][k] - pts[pick[0]][k];
        D.push_back(std::move(d));
      }
      const auto ns = nullspace(D, n);
      if (ns.size() != 1) return;
      std::vector<BigInt> a = primitive_integer(ns[0]);
      Rational b = dot(a, pts[pick[0]]);
      bool le = true, ge = true;
      for (const auto& p : pts) {
        const Rational v = dot(a, p);
        le = le && v <= b;
        ge = ge && v >= b;
      }
      if (!le && !ge) return;
      if (!le) {
        for (auto& x : a) x = -x;
        b = -b;
      }
      auto key = std::make_pair(a, b);
      if (found.count(key)) return;
      Facet f{a, b, {}};
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (dot(a, pts[i]) == b) f.vertex_ids.push_back(static_cast<int>(i));
      found.emplace(std::move(key), std::move(f));
      return;
    }
    for (int i = start; i < static_cast<int>(pts.size()); ++i) {
      pick[depth] = i;
      choose(i + 1, depth + 1);
    }
  };
  choose(0, 0);

  LatticePolytope P;
  P.dim_ = n;
  std::vector<int> new_id(pts.size(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    QMatrix normals;
    for (const auto& [key, f] : found)
      if (std::find(f.vertex_ids.begin(), f.vertex_ids.end(), static_cast<int>(i)) != f.vertex_ids.end()) {
        QVector q;
        for (const auto& x : f.normal) q.push_back(Rational(x));
        normals.push_back(std::move(q));
      }
    if (static_cast<int>(rref(normals, n).size()) == n) {
      new_id[i] = static_cast<int>(P.vertices_.size());
      P.vertices_.push_back(pts[i]);
    }
  }
  for (auto& [key, f] : found) {
    std::vector<int> ids;
    for (int i : f.vertex_ids)
      if (new_id[i] >= 0) ids.push_back(new_id[i]);
    f.vertex_ids = std::move(ids);
    P.facets_.push_back(std::move(f));
  }
  return P;
}

bool LatticePolytope::origin_in_interior() const {
  return std::all_of(facets_.begin(), facets_.end(), [](const Facet& f) { return f.offset > 0; });
}

std::vector<std::vector<BigInt>> LatticePolytope::lattice_points(int k) const {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "dilation k must be >= 1");
  std::vector<BigInt> lo(dim_), hi(dim_);
  for (int c = 0; c < dim_; ++c) {
    Rational mn = vertices_[0][c], mx = vertices_[0][c];
    for (const auto& v : vertices_) {
      mn = std::min(mn, v[c]);
      mx = std::max(mx, v[c]);
    }
    lo[c] = ceil_q(mn * k);
    hi[c] = floor_q(mx * k);
  }
  std::vector<std::vector<BigInt>> out;
  std::vector<BigInt> x = lo;
  if (std::any_of(lo.begin(), lo.end(), [&, c = 0](const BigInt& l) mutable { return l > hi[c++]; })) return out;
  while (true) {
    bool inside = true;
    for (const auto& f : facets_) {
      BigInt s = 0;
      for (int c = 0; c < dim_; ++c) s += f.normal[c] * x[c];
      if (Rational(s) > f.offset * k) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(x);
    int c = dim_ - 1;
    while (c >= 0 && ++x[c] > hi[c]) {
      x[c] = lo[c];
      --c;
    }
    if (c < 0) break;
  }
  return out;
}

std::vector<std::vector<int>> LatticePolytope::triangulation() const {
  std::function<std::vector<std::vector<int>>(const std::vector<int>&, int)> tri =
      [&](const std::vector<int>& face, int d) -> std::vector<std::vector<int>> {
    if (d == 0) return {{face[0]}};
    const int v0 = face[0];
    std::set<std::vector<int>> subfaces;
    for (const auto& f : facets_) {
      std::vector<int> s;
      std::set_intersection(face.begin(), face.end(), f.vertex_ids.begin(), f.vertex_ids.end(), std::back_inserter(s));
      if (static_cast<int>(s.size()) >= d && affine_rank(vertices_, s) == d - 1) subfaces.insert(s);
    }
    std::vector<std::vector<int>> out;
    for (const auto& s : subfaces) {
      if (std::binary_search(s.begin(), s.end(), v0)) continue;
      for (auto simp : tri(s, d - 1)) {
        simp.push_back(v0);
        out.push_back(std::move(simp));
      }
    }
    return out;
  };
  std::vector<int> all(vertices_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return tri(all, dim_);
}

ToricReport polytope_measure(const LatticePolytope& P) {
  const int n = P.dim();
  const auto& V = P.vertices();
  ToricReport r;
  r.volume = 0;
  QVector moment(n, 0);
  const Rational nfact(factorial(n));
  for (const auto& simp : P.triangulation()) {
    QMatrix D;
    for (int i = 0; i < n; ++i) {
      QVector d(n);
      for (int k = 0; k < n; ++k) d[k] = V[simp[i]][k] - V[simp[n]][k];
      D.push_back(std::move(d));
    }
    Rational vol = det(D);
    if (vol < 0) vol = -vol;
    vol /= nfact;
    r.volume += vol;
    for (int k = 0; k < n; ++k) {
      Rational s = 0;
      for (int v : simp) s += V[v][k];
      moment[k] += vol * s / (n + 1);
    }
  }
  r.barycenter.resize(n);
  for (int k = 0; k < n; ++k) r.barycenter[k] = moment[k] / r.volume;
  r.degree = r.volume * nfact;
  r.kps = std::all_of(r.barycenter.begin(), r.barycenter.end(), [](const Rational& q) { return q == 0; });
  r.bound_rhs = universal_bound_rhs(r.volume, n);
  r.cn_over_factorial = c_n_constant(n) / factorial(n + 1).convert_to<double>();
  return r;
}

double universal_bound_rhs(const Rational& volume, int n) {
  const double vol = volume.convert_to<double>();
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return -0.5 * vol * (std::log(vol) - n * std::log(2 * pi2));
}

double universal_bound_rhs(const LatticePolytope& P) { return polytope_measure(P).bound_rhs; }

std::string Binomial::to_string() const {
  auto mono = [](const std::vector<BigInt>& e) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      out << (first ? "" : "*") << "x" << i + 1;
      if (e[i] > 1) out << "^" << e[i];
      first = false;
    }
    if (first) out << "1";
    return out.str();
  };
  return mono(plus) + " - " + mono(minus);
}

std::vector<std::vector<BigInt>> integer_kernel(const std::vector<std::vector<BigInt>>& A) {
  const std::size_t rows = A.size();
  if (rows == 0) return {};
  const std::size_t cols = A[0].size();
  // [A^T | I], reduced by unimodular row operations on the first `rows` columns.
  std::vector<std::vector<BigInt>> M(cols, std::vector<BigInt>(rows + cols, 0));
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < rows; ++j) M[i][j] = A[j][i];
    M[i][rows + i] = 1;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < rows && r < cols; ++c) {
    while (true) {
      std::size_t piv = cols;
      for (std::size_t i = r; i < cols; ++i)
        if (M[i][c] != 0 && (piv == cols || mp::abs(M[i][c]) < mp::abs(M[piv][c]))) piv = i;
      if (piv == cols) break;
      std::swap(M[piv], M[r]);
      bool done = true;
      for (std::size_t i = r + 1; i < cols; ++i) {
        if (M[i][c] == 0) continue;
        const BigInt q = M[i][c] / M[r][c];
        for (std::size_t k = 0; k < rows + cols; ++k) M[i][k] -= q * M[r][k];
        if (M[i][c] != 0) done = false;
      }
      if (done) {
        ++r;
        break;
      }
    }
  }
  std::vector<std::vector<BigInt>> K;
  for (std::size_t i = r; i < cols; ++i) K.emplace_back(M[i].begin() + rows, M[i].end());

  auto dotz = [](const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < K.size(); ++i)
      for (std::size_t j = 0; j < K.size(); ++j) {
        if (i == j) continue;
        const BigInt nj = dotz(K[j], K[j]);
        const BigInt num = dotz(K[i], K[j]);
        BigInt q = (2 * mp::abs(num) + nj) / (2 * nj);
        if (num < 0) q = -q;
        if (q == 0) continue;
        std::vector<BigInt> t = K[i];
        for (std::size_t k = 0; k < t.size(); ++k) t[k] -= q * K[j][k];
        if (dotz(t, t) < dotz(K[i], K[i])) {
          K[i] = std::move(t);
          changed = true;
        }
      }
  }
  for (auto& v : K) {
    const auto first = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
    if (first != v.end() && *first < 0)
      for (auto& x : v) x = -x;
  }
  std::sort(K.begin(), K.end(), [&](const auto& a, const auto& b) {
    const BigInt na = dotz(a, a), nb = dotz(b, b);
    return na != nb ? na < nb : a > b;
  });
  return K;
}

BinomialReport canonical_model_binomials(const LatticePolytope& P, int k, MarkerMode mode) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "dilation k must be >= 1");
  BinomialReport rep;
  rep.mode = mode;
  if (mode == MarkerMode::Vertices) {
    for (const auto& v : P.vertices()) {
      std::vector<BigInt> m;
      for (const auto& q : v) {
        const Rational s = q * k;
        if (mp::denominator(s) != 1) throw Error(ErrorKind::InvalidInput, "vertices of kP are not lattice points");
        m.push_back(mp::numerator(s));
      }
      rep.markers.push_back(std::move(m));
    }
    rep.note = "markers are the vertices of kP; projective normality may need all lattice points";
  } else {
    rep.markers = P.lattice_points(k);
    rep.note = "markers are all lattice points of kP";
  }
  const int n = P.dim();
  std::vector<std::vector<BigInt>> A(n + 1, std::vector<BigInt>(rep.markers.size()));
  for (std::size_t i = 0; i < rep.markers.size(); ++i) {
    for (int c = 0; c < n; ++c) A[c][i] = rep.markers[i][c];
    A[n][i] = 1;
  }
  for (const auto& v : integer_kernel(A)) {
    Binomial b;
    for (const auto& x : v) {
      b.plus.push_back(x > 0 ? x : BigInt(0));
      b.minus.push_back(x < 0 ? BigInt(-x) : BigInt(0));
    }
    rep.binomials.push_back(std::move(b));
  }
  return rep;
}

GapTable gap_table(const std::vector<CatalogEntry>& catalog, int n) {
  GapTable t;
  for (const auto& e : catalog) {
    if (e.polytope.dim() != n) continue;
    const auto m = polytope_measure(e.polytope);
    t.rows.push_back({e.name, m.degree, m.kps});
  }
  std::stable_sort(t.rows.begin(), t.rows.end(), [](const GapRow& a, const GapRow& b) { return a.degree > b.degree; });
  if (t.rows.empty()) return t;
  const BigInt top = mp::pow(BigInt(n + 1), static_cast<unsigned>(n));
  t.projective_space_first = t.rows[0].degree == Rational(top) && t.rows[0].kps;
  if (n == 1) {
    t.product_next_kps = t.rows.size() == 1;
    return t;
  }
  const BigInt second = 2 * mp::pow(BigInt(n), static_cast<unsigned>(n));
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    if (t.rows[i].kps) {
      t.product_next_kps = t.rows[i].degree == Rational(second);
      break;
    }
  return t;
}

}  // namespace heightlab

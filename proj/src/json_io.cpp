#include "heightlab/json_io.hpp"

#include <fstream>
#include <sstream>

namespace heightlab::io {

namespace mp = boost::multiprecision;

namespace {

std::string str(const BigInt& x) { return x.str(); }

json big_json(const BigInt& x) {
  if (mp::abs(x) < BigInt(1) << 53) return x.convert_to<long long>();
  return str(x);
}

}  // namespace

BigInt big_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorKind::InvalidInput, "expected an integer, got " + j.dump());
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorKind::InvalidInput, "expected an integer or \"p/q\" string, got " + j.dump());
}

json form_to_json(const HomogeneousForm& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back(json::array({t.exponents, big_json(t.coeff)}));
  return {{"degree", f.degree()}, {"nvars", f.nvars()}, {"terms", terms}};
}

HomogeneousForm form_from_json(const json& j) {
  try {
    const int nvars = j.at("nvars").get<int>();
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      if (!t.is_array() || t.size() != 2) throw Error(ErrorKind::InvalidInput, "term must be [[exponents], coeff]");
      terms.push_back({t[0].get<std::vector<int>>(), big_from_json(t[1])});
    }
    HomogeneousForm f = HomogeneousForm::make(nvars, terms);
    if (j.contains("degree") && j.at("degree").get<int>() != f.degree())
      throw Error(ErrorKind::InvalidInput, "declared degree does not match the terms");
    return f;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed form JSON: ") + e.what());
  }
}

json diagonal_to_json(const DiagonalForm& f) {
  json a = json::array();
  for (const auto& c : f.a()) a.push_back(big_json(c));
  return {{"d", f.d()}, {"n", f.n()}, {"a", a}};
}

DiagonalForm diagonal_from_json(const json& j) {
  try {
    std::vector<BigInt> a;
    for (const auto& c : j.at("a")) a.push_back(big_from_json(c));
    return DiagonalForm::make(j.at("d").get<int>(), j.at("n").get<int>(), std::move(a));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed diagonal form JSON: ") + e.what());
  }
}

Variety variety_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "variety must be a JSON object");
  if (j.contains("projective_space")) return Variety::projective_space(j.at("projective_space").get<int>());
  if (j.contains("a")) return Variety::from_diagonal(diagonal_from_json(j));
  if (j.contains("terms")) return Variety::hypersurface(form_from_json(j));
  throw Error(ErrorKind::InvalidInput, "variety JSON needs projective_space, a diagonal form or a form");
}

LatticePolytope polytope_from_json(const json& j) {
  try {
    std::vector<QVector> pts;
    for (const auto& v : j.at("vertices")) {
      QVector q;
      for (const auto& x : v) q.push_back(rational_from_json(x));
      pts.push_back(std::move(q));
    }
    return LatticePolytope::make(pts);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed polytope JSON: ") + e.what());
  }
}

std::vector<CatalogEntry> catalog_from_json(const json& j) {
  const json& arr = j.is_object() ? j.at("polytopes") : j;
  std::vector<CatalogEntry> out;
  for (const auto& e : arr) out.push_back({e.value("name", "unnamed"), polytope_from_json(e)});
  return out;
}

std::vector<Exclusion> exclusions_from_json(const json& j) {
  const json& arr = j.is_object() ? j.at("exclusions") : j;
  std::vector<Exclusion> out;
  try {
    for (const auto& e : arr) out.push_back({e.value("name", "unnamed"), e.at("forms").get<std::vector<std::vector<std::int64_t>>>()});
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed exclusion JSON: ") + e.what());
  }
  return out;
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

json to_json(const Rational& q) {
  std::ostringstream out;
  out << q;
  return {{"exact", out.str()}, {"value", q.convert_to<double>()}};
}

json to_json(const Estimate& e) {
  return {{"value", e.value}, {"est_error", e.est_error}, {"nodes", e.nodes}, {"method", e.method}};
}

json to_json(const PointHeight& h) { return {{"h", h.h}, {"H", h.H}, {"metric", h.metric.name()}, {"shift", h.metric.shift}}; }

json to_json(const InequalityReport& r) {
  return {{"lhs", r.lhs}, {"rhs", r.rhs}, {"slack", r.slack}, {"error", r.error},
          {"verdict", to_string(r.verdict)}, {"inputs", r.inputs}, {"note", r.note}};
}

json to_json(const MahlerReport& r) {
  return {{"m", r.m}, {"coeff_gap", r.coeff_gap}, {"nodes", r.nodes}, {"est_error", r.est_error}, {"method", r.method}};
}

json to_json(const LocalDensity& r) {
  return {{"p", r.p}, {"r_used", r.r_used}, {"count", str(r.count)}, {"mu_p", to_json(r.mu_p)},
          {"stabilized", r.stabilized}, {"good_reduction", r.good_reduction}, {"method", r.method}};
}

json to_json(const EulerProductReport& r) {
  json factors = json::array();
  for (std::size_t i = 0; i < r.factors.size(); ++i) {
    const auto& f = r.factors[i];
    json e = {{"p", f.p}, {"factor", f.factor}, {"partial_product", r.partial_products[i]},
              {"mu_p", to_json(f.density.mu_p)}, {"r_used", f.density.r_used}, {"good_reduction", f.density.good_reduction}};
    if (f.flagged) e["flag"] = f.flag;
    factors.push_back(std::move(e));
  }
  return {{"P_max", r.P_max}, {"product", r.product()}, {"factors", factors}, {"tail_note", r.tail_note}};
}

json to_json(const DeligneReport& r) {
  return {{"p", r.p}, {"count", str(r.count)}, {"pi_n", str(r.pi_n)}, {"deviation", r.deviation}};
}

json to_json(const CountReport& r) {
  json j = {{"B_grid", r.B_grid}, {"counts", r.counts}, {"excluded", r.excluded}, {"metric", r.metric.name()},
            {"shift", r.metric.shift}, {"anticanonical_power", r.k}, {"partial", r.partial}};
  if (r.theta_hat) {
    j["theta_hat"] = *r.theta_hat;
    j["theta_stderr"] = *r.theta_stderr;
    j["r_used"] = r.r_used;
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const MinPointReport& r) {
  json j = {{"field", r.field == FieldChoice::Q ? "Q" : "Q(i)"}, {"search_bound", r.search_bound},
            {"searched", r.searched}, {"found", r.found()}, {"note", r.note}};
  if (r.point) {
    json pt = json::array();
    for (const auto& x : *r.point) pt.push_back(big_json(x));
    j["point"] = pt;
  }
  if (r.gaussian_point) {
    json pt = json::array();
    for (const auto& z : *r.gaussian_point) pt.push_back(z.to_string());
    j["point"] = pt;
  }
  if (r.found()) j["H_min"] = r.H_min;
  if (r.certificate) j["certificate"] = {{"p", r.certificate->p}, {"r", r.certificate->r}, {"text", r.certificate->describe()}};
  if (!r.certificates.empty()) {
    json all = json::array();
    for (const auto& c : r.certificates) all.push_back({{"p", c.p}, {"r", c.r}, {"text", c.describe()}});
    j["certificates"] = all;
  }
  return j;
}

json to_json(const ToricReport& r) {
  json bary = json::array();
  for (const auto& q : r.barycenter) bary.push_back(to_json(q));
  return {{"volume", to_json(r.volume)}, {"barycenter", bary}, {"degree", to_json(r.degree)}, {"kps", r.kps},
          {"bound_rhs", r.bound_rhs}, {"cn_over_factorial", r.cn_over_factorial}};
}

json to_json(const BinomialReport& r) {
  json markers = json::array();
  for (const auto& m : r.markers) {
    json v = json::array();
    for (const auto& x : m) v.push_back(big_json(x));
    markers.push_back(v);
  }
  json bins = json::array();
  for (const auto& b : r.binomials) bins.push_back(b.to_string());
  return {{"markers", markers}, {"binomials", bins},
          {"mode", r.mode == MarkerMode::Vertices ? "vertices" : "lattice"}, {"note", r.note}};
}

json to_json(const GapTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back({{"name", r.name}, {"degree", to_json(r.degree)}, {"kps", r.kps}});
  return {{"rows", rows}, {"projective_space_first", t.projective_space_first}, {"product_next_kps", t.product_next_kps}};
}

json to_json(const ZhangReport& z) {
  json j = {{"upper", to_json(z.upper)}, {"lower", to_json(z.lower)}, {"satisfied", z.satisfied()}};
  if (z.p1_upper) j["p1_upper"] = to_json(*z.p1_upper);
  return j;
}

json to_json(const PeyreConstant& c) {
  return {{"theta", c.theta}, {"eta_part", c.eta_part}, {"mu_C", c.mu_C}, {"mu_R", c.mu_R},
          {"field_shape", {{"m_R", c.shape.m_R}, {"m_C", c.shape.m_C}, {"degree", c.shape.degree}}}};
}

json to_json(const XaStudy& s) {
  json rows = json::array();
  for (const auto& r : s.rows) {
    json row = {{"a", big_json(r.a)}, {"a_root", r.a_root}, {"mahler", r.mahler}, {"exp_h_proxy", r.exp_h_proxy},
                {"bad_product", r.bad_product}, {"bad_cap", r.bad_cap}, {"bad_within_cap", r.bad_within_cap},
                {"good_partial", r.good_partial}};
    row["min_H"] = r.min_H ? json(*r.min_H) : json(nullptr);
    if (r.certificate) row["certificate"] = r.certificate->describe();
    json bf = json::array();
    for (const auto& [p, mu] : r.bad_factors) bf.push_back({{"p", p}, {"mu_p", mu}});
    row["bad_factors"] = bf;
    rows.push_back(std::move(row));
  }
  json j = {{"d", s.d}, {"n", s.n}, {"rows", rows}, {"exp_h_note", "proxy: exp(m(f_a)/(d(n+1)))"}};
  j["min_H_slope"] = s.min_H_slope ? json(*s.min_H_slope) : json(nullptr);
  j["exp_h_slope"] = s.exp_h_slope ? json(*s.exp_h_slope) : json(nullptr);
  return j;
}

json to_json(const p1::HeightReport& h) {
  return {{"h_O1", h.h_O1}, {"h_anticanonical", h.h_anticanonical}, {"h_normalized", h.h_normalized},
          {"est_error", h.est_error}, {"nodes", h.nodes}};
}

json to_json(const p1::EnergyReport& e) {
  return {{"value", e.value}, {"est_error", e.est_error}, {"quadrature_nodes", e.quadrature_nodes}};
}

json to_json(const p1::RotationReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases) cases.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}});
  return {{"cases", cases}, {"max_deviation", r.max_deviation}, {"max_measure_deviation", r.max_measure_deviation}};
}

}  // namespace heightlab::io

#pragma once

#include <json.hpp>

#include "heightlab/enumerate.hpp"
#include "heightlab/heights.hpp"
#include "heightlab/localdens.hpp"
#include "heightlab/mahler.hpp"
#include "heightlab/p1lab.hpp"
#include "heightlab/toric.hpp"
#include "heightlab/verdict.hpp"

namespace heightlab::io {

using nlohmann::json;

BigInt big_from_json(const json& j);
Rational rational_from_json(const json& j);

// {"degree": d, "nvars": m+1, "terms": [[[e...], c], ...]}
json form_to_json(const HomogeneousForm& f);
HomogeneousForm form_from_json(const json& j);
// {"d": d, "n": n, "a": [...]}
json diagonal_to_json(const DiagonalForm& f);
DiagonalForm diagonal_from_json(const json& j);
// Any of the above, or {"projective_space": n}.
Variety variety_from_json(const json& j);

LatticePolytope polytope_from_json(const json& j);
std::vector<CatalogEntry> catalog_from_json(const json& j);
std::vector<Exclusion> exclusions_from_json(const json& j);

json load_file(const std::string& path);

json to_json(const Rational& q);
json to_json(const Estimate& e);
json to_json(const PointHeight& h);
json to_json(const InequalityReport& r);
json to_json(const MahlerReport& r);
json to_json(const LocalDensity& r);
json to_json(const EulerProductReport& r);
json to_json(const DeligneReport& r);
json to_json(const CountReport& r);
json to_json(const MinPointReport& r);
json to_json(const ToricReport& r);
json to_json(const BinomialReport& r);
json to_json(const GapTable& t);
json to_json(const ZhangReport& z);
json to_json(const PeyreConstant& c);
json to_json(const XaStudy& s);
json to_json(const p1::HeightReport& h);
json to_json(const p1::EnergyReport& e);
json to_json(const p1::RotationReport& r);

}  // namespace heightlab::io

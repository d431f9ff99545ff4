#include "cli/commands.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "cli/cache.hpp"
#include "cli/config.hpp"
#include "cli/svg.hpp"
#include "heightlab/json_io.hpp"

namespace heightlab::cli {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorKind::InvalidInput, "input " + key + ": expected a number, got '" + v + "'");
}

// "k=v,k=v" with list values separated by ':'.
std::map<std::string, std::string> parse_inputs(const std::string& text) {
  std::map<std::string, std::string> kv;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidInput, "--inputs entry '" + item + "' is not key=value");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

double need(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw Error(ErrorKind::InvalidInput, "--inputs is missing " + key);
  return to_double(key, it->second);
}

double opt_or(const std::map<std::string, std::string>& kv, const std::string& key, double fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : to_double(key, it->second);
}

std::string csv_num(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// CSV view of a JSON report for the grid-shaped commands.
std::optional<std::string> to_csv(const std::string& command, const json& r) {
  std::ostringstream o;
  if (command == "count") {
    o << "B,N\n";
    for (std::size_t i = 0; i < r["B_grid"].size(); ++i) o << csv_num(r["B_grid"][i]) << "," << csv_num(r["counts"][i]) << "\n";
  } else if (command == "eulerprod") {
    o << "p,mu_p,factor,partial_product,r_used,good_reduction,flag\n";
    for (const auto& f : r["factors"])
      o << f["p"] << "," << csv_num(f["mu_p"]["value"]) << "," << csv_num(f["factor"]) << "," << csv_num(f["partial_product"])
        << "," << f["r_used"] << "," << f["good_reduction"] << "," << (f.contains("flag") ? f["flag"].get<std::string>() : "")
        << "\n";
  } else if (command == "study-xa") {
    o << "a,min_H,a_root,mahler,exp_h_proxy,bad_product,bad_cap,good_partial,certificate\n";
    for (const auto& row : r["rows"])
      o << csv_num(row["a"]) << "," << csv_num(row["min_H"]) << "," << csv_num(row["a_root"]) << "," << csv_num(row["mahler"])
        << "," << csv_num(row["exp_h_proxy"]) << "," << csv_num(row["bad_product"]) << "," << csv_num(row["bad_cap"]) << ","
        << csv_num(row["good_partial"]) << "," << (row.contains("certificate") ? row["certificate"].get<std::string>() : "")
        << "\n";
  } else if (command == "toric" && r.contains("rows")) {
    o << "name,degree,kps\n";
    for (const auto& row : r["rows"]) o << row["name"].get<std::string>() << "," << csv_num(row["degree"]["exact"]) << "," << row["kps"] << "\n";
  } else {
    return std::nullopt;
  }
  return o.str();
}

struct Inputs {
  // Canonical text of everything the result depends on.
  std::map<std::string, std::string> parts;
  void add(const std::string& k, const std::string& v) { parts[k] = v; }
  void add_file(const std::string& k, const json& j) { parts[k] = j.dump(); }
  std::string canonical() const {
    json j = parts;
    return j.dump();
  }
};

p1::Metric p1_metric(const std::string& name, const std::string& fourier, double shift) {
  p1::Metric m;
  if (name == "fs") m = p1::Metric::fubini_study(shift);
  else if (name == "weil") m = p1::Metric::weil(shift);
  else throw Error(ErrorKind::InvalidInput, "--metric must be fs or weil");
  if (!fourier.empty()) m.harmonic = FourierFunction::parse(fourier);
  return m;
}

MetricSpec ambient_metric(const std::string& name, double shift) {
  MetricSpec m = parse_metric(name);
  m.shift = shift;
  return m;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"heightlab: heights, densities and point counts on Fano varieties"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("heightlab ") + kVersion);

  std::string config_path, cache_dir, format, out_dir;
  int threads = -1;
  bool no_cache = false, plot = false;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--threads", threads, "worker threads (0: OpenMP default)");
  app.add_option("--cache-dir", cache_dir, "result cache directory");
  app.add_flag("--no-cache", no_cache, "disable the result cache");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--plot", plot, "emit SVG plots where available");
  app.add_option("--out", out_dir, "directory for the manifest and plots");

  // height-point
  std::string hp_coords, hp_metric = "weil";
  double hp_shift = 0;
  auto* hp = app.add_subcommand("height-point", "height of a point of P^m over Q or Q(i)");
  hp->add_option("--coords", hp_coords, "comma separated rationals or Gaussian rationals")->required();
  hp->add_option("--metric", hp_metric, "weil, fs or lp:<p>");
  hp->add_option("--shift", hp_shift, "weight shift λ");

  // p1
  std::string p1_what, p1_metric_name = "fs", p1_fourier;
  double p1_shift = 0;
  double p1_tol = -1;
  int p1_max_nodes = 4096;
  auto* p1c = app.add_subcommand("p1", "Monge-Ampère quantities on P^1");
  p1c->add_option("what", p1_what)->required()->check(CLI::IsMember({"energy", "height", "ding", "masses", "mt", "real-theorem"}));
  p1c->add_option("--metric", p1_metric_name, "fs or weil")->check(CLI::IsMember({"fs", "weil"}));
  p1c->add_option("--fourier", p1_fourier, "a0,a1,b1,a2,b2,... of the boundary perturbation");
  p1c->add_option("--shift", p1_shift, "weight shift λ on O(1)");
  p1c->add_option("--tol", p1_tol, "quadrature tolerance");
  p1c->add_option("--max-nodes", p1_max_nodes, "largest radial/angular node count");

  // mahler
  std::string mh_form, mh_method = "jensen";
  long mh_res = 64;
  double mh_tol = -1;
  auto* mh = app.add_subcommand("mahler", "Mahler measure of a form");
  mh->add_option("--form", mh_form, "form JSON")->required();
  mh->add_option("--method", mh_method)->check(CLI::IsMember({"jensen", "qmc"}));
  mh->add_option("--res", mh_res, "initial nodes per axis or sample count");
  mh->add_option("--tol", mh_tol, "convergence tolerance");

  // localdensity
  std::string ld_form;
  std::uint64_t ld_p = 0;
  int ld_rmax = 6;
  auto* ld = app.add_subcommand("localdensity", "p-adic density of a variety");
  ld->add_option("--form", ld_form, "variety JSON")->required();
  ld->add_option("--p", ld_p, "prime")->required();
  ld->add_option("--rmax", ld_rmax, "largest exponent r");

  // eulerprod
  std::string ep_form;
  std::uint64_t ep_pmax = 100;
  int ep_rmax = 6;
  auto* ep = app.add_subcommand("eulerprod", "partial Euler product of (1-1/p) μ_p");
  ep->add_option("--form", ep_form, "variety JSON")->required();
  ep->add_option("--pmax", ep_pmax, "largest prime");
  ep->add_option("--rmax", ep_rmax, "largest exponent r at bad primes");

  // count
  std::string ct_variety, ct_exclude, ct_metric = "weil";
  double ct_B = 100, ct_shift = 0;
  int ct_grid = 8, ct_shards = 0, ct_logpow = 0;
  bool ct_no_sieve = false;
  auto* ct = app.add_subcommand("count", "count rational points of bounded anticanonical height");
  ct->add_option("--variety", ct_variety, "variety JSON")->required();
  ct->add_option("--B", ct_B, "largest height bound");
  ct->add_option("--grid", ct_grid, "number of dyadic grid points");
  ct->add_option("--exclude", ct_exclude, "exclusion list JSON");
  ct->add_option("--metric", ct_metric, "weil, fs or lp:<p>");
  ct->add_option("--shift", ct_shift, "weight shift λ");
  ct->add_option("--shards", ct_shards, "work shards (0: one per thread)");
  ct->add_option("--log-power", ct_logpow, "r in N(B) ~ Θ B (log B)^r");
  ct->add_flag("--no-sieve", ct_no_sieve, "disable the congruence sieve");

  // minpoint
  std::string mp_variety, mp_field = "q", mp_metric = "weil";
  double mp_cap = 1e3, mp_shift = 0;
  bool mp_force = false;
  auto* mpc = app.add_subcommand("minpoint", "point of least height or a local obstruction");
  mpc->add_option("--variety", mp_variety, "variety JSON")->required();
  mpc->add_option("--cap", mp_cap, "search height cap");
  mpc->add_option("--field", mp_field)->check(CLI::IsMember({"q", "qi"}));
  mpc->add_option("--metric", mp_metric, "weil, fs or lp:<p>");
  mpc->add_option("--shift", mp_shift, "weight shift λ");
  mpc->add_flag("--force-search", mp_force, "search even when a certificate exists");

  // toric
  std::string tr_polytope, tr_catalog, tr_markers = "vertices";
  int tr_k = 1, tr_n = 0;
  auto* tr = app.add_subcommand("toric", "lattice polytope measures, binomials and degree tables");
  auto* tr_p_opt = tr->add_option("--polytope", tr_polytope, "polytope JSON");
  auto* tr_c_opt = tr->add_option("--catalog", tr_catalog, "catalog JSON for a degree table");
  tr_p_opt->excludes(tr_c_opt);
  tr->add_option("--k", tr_k, "dilation for the binomial generators");
  tr->add_option("--markers", tr_markers)->check(CLI::IsMember({"vertices", "lattice"}));
  tr->add_option("--n", tr_n, "dimension filter for --catalog");

  // check
  std::string ck_what, ck_inputs;
  auto* ck = app.add_subcommand("check", "evaluate one of the height inequalities");
  ck->add_option("--what", ck_what)->required()->check(CLI::IsMember({"main", "diagonal", "minpoint", "zhang", "ej"}));
  ck->add_option("--inputs", ck_inputs, "k=v,... with ':' separating list entries")->required();

  // study-xa
  int xa_d = 4, xa_n = 3, xa_rmax = 6;
  std::string xa_a = "3,21,33";
  double xa_cap = 64;
  std::uint64_t xa_pmax = 100;
  auto* xa = app.add_subcommand("study-xa", "growth study of a_0 x_0^d + ... = a x_{n+1}^d");
  xa->add_option("--d", xa_d);
  xa->add_option("--n", xa_n);
  xa->add_option("--a", xa_a, "comma separated values of a");
  xa->add_option("--cap", xa_cap, "search height cap");
  xa->add_option("--pmax", xa_pmax, "largest good prime in the partial product");
  xa->add_option("--rmax", xa_rmax, "largest exponent r at bad primes");

  // peyre
  double py_eta = 1, py_mu_c = 0, py_mu_r = 0;
  std::string py_field = "q";
  auto* py = app.add_subcommand("peyre", "assemble a Peyre constant");
  py->add_option("--eta", py_eta, "α(X) times the finite Euler product");
  py->add_option("--mu-c", py_mu_c, "complex mass");
  py->add_option("--mu-r", py_mu_r, "real mass");
  py->add_option("--field", py_field)->check(CLI::IsMember({"q", "qi"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  RunConfig cfg;
  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  for (const auto* opt : sub->get_options())
    if (opt->count() > 0) cfg.flags[opt->get_name()] = opt->as<std::string>();

  try {
    cfg.cache_dir = default_cache_dir();
    if (!config_path.empty()) {
      auto kv = read_config_file(config_path);
      if (const char* env = std::getenv("HEIGHTLAB_CACHE"); env && *env) kv.erase("cache_dir");
      apply_settings(cfg, kv);
    }
    if (threads >= 0) cfg.threads = threads;
    if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
    if (no_cache) cfg.cache = false;
    if (!format.empty()) cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    if (plot) cfg.plot = true;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

    Cache cache(cfg.cache_dir, cfg.cache, &err);
    Inputs inputs;
    inputs.add("command", cfg.command);
    for (const auto& [k, v] : cfg.flags) inputs.add("flag" + k, v);
    inputs.add("threads", std::to_string(cfg.threads));

    auto load = [&](const std::string& key, const std::string& path) {
      json j = io::load_file(path);
      inputs.add_file(key, j);
      return j;
    };
    auto valid_json = [](const std::string& s) { return json::accept(s); };
    auto cached = [&](const std::function<json()>& compute) {
      const std::string text = cache.get_put(cfg.command, inputs.canonical(), [&] { return compute().dump(2); }, valid_json);
      return json::parse(text);
    };

    json result;
    std::vector<std::pair<std::string, std::string>> artifacts;
    const double tol = p1_tol > 0 ? p1_tol : cfg.tol;

    if (cfg.command == "height-point") {
      const auto parts = split(hp_coords, ',');
      const MetricSpec metric = ambient_metric(hp_metric, hp_shift);
      const bool gaussian = hp_coords.find('i') != std::string::npos;
      PointHeight h;
      if (gaussian) {
        std::vector<GaussianRational> raw;
        for (const auto& s : parts) raw.push_back(parse_gaussian(s));
        h = gaussian_height(normalize_gaussian(raw), metric);
      } else {
        std::vector<Rational> raw;
        for (const auto& s : parts) raw.push_back(parse_rational(s));
        h = point_height(normalize_point(raw), metric);
      }
      result = io::to_json(h);
    } else if (cfg.command == "p1") {
      const p1::Metric psi = p1_metric(p1_metric_name, p1_fourier, p1_shift);
      p1::QuadratureOptions q;
      q.tol = tol;
      q.max_nodes = p1_max_nodes;
      if (p1_what == "energy") {
        result = io::to_json(p1::energy_E(psi, p1::Metric::weil(), q));
      } else if (p1_what == "height") {
        result = io::to_json(p1::metric_height_p1(psi, q));
      } else if (p1_what == "ding") {
        result = io::to_json(p1::ding_arith(psi, q));
      } else if (p1_what == "masses") {
        const Estimate c = p1::complex_mass_p1(psi, q), r = p1::real_mass_p1(psi, q);
        result = {{"complex", c.value}, {"real", r.value}, {"complex_est_error", c.est_error}, {"real_est_error", r.est_error}};
      } else if (p1_what == "mt") {
        result = io::to_json(p1::mt_functional(p1_fourier.empty() ? FourierFunction{} : FourierFunction::parse(p1_fourier),
                                               std::min(tol, 1e-12)));
      } else {
        result = io::to_json(p1::real_theorem_functional(psi, q));
      }
    } else if (cfg.command == "mahler") {
      const Variety X = io::variety_from_json(load("form", mh_form));
      if (!X.form) throw Error(ErrorKind::InvalidInput, "mahler needs a form, not projective space");
      MahlerOptions o;
      o.method = mh_method == "qmc" ? MahlerMethod::QMC : MahlerMethod::Jensen;
      o.resolution = mh_res;
      if (mh_tol > 0) o.tol = mh_tol;
      result = io::to_json(mahler_measure(*X.form, o));
    } else if (cfg.command == "localdensity") {
      const Variety X = io::variety_from_json(load("form", ld_form));
      result = cached([&] { return io::to_json(local_density(X, ld_p, ld_rmax)); });
    } else if (cfg.command == "eulerprod") {
      const Variety X = io::variety_from_json(load("form", ep_form));
      result = cached([&] { return io::to_json(euler_product(X, ep_pmax, ep_rmax)); });
    } else if (cfg.command == "count") {
      const Variety X = io::variety_from_json(load("variety", ct_variety));
      std::vector<Exclusion> ex;
      if (!ct_exclude.empty()) ex = io::exclusions_from_json(load("exclude", ct_exclude));
      result = cached([&] {
        ScanOptions o;
        o.shards = ct_shards;
        o.sieve = !ct_no_sieve;
        CountReport rep = count_points(X, ambient_metric(ct_metric, ct_shift), height_grid(ct_B, ct_grid), ex, o);
        try {
          fit_theta(rep, ct_logpow);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::InsufficientData) throw;
          rep.note += (rep.note.empty() ? "" : "; ") + std::string("no Θ fit: ") + e.what();
        }
        return io::to_json(rep);
      });
    } else if (cfg.command == "minpoint") {
      const Variety X = io::variety_from_json(load("variety", mp_variety));
      MinPointOptions o;
      o.search_despite_certificate = mp_force;
      result = io::to_json(min_point(X, ambient_metric(mp_metric, mp_shift), mp_cap,
                                     mp_field == "qi" ? FieldChoice::QI : FieldChoice::Q, o));
    } else if (cfg.command == "toric") {
      if (!tr_catalog.empty()) {
        auto cat = io::catalog_from_json(load("catalog", tr_catalog));
        if (cat.empty()) throw Error(ErrorKind::InvalidInput, "empty catalog");
        result = io::to_json(gap_table(cat, tr_n > 0 ? tr_n : cat.front().polytope.dim()));
      } else if (!tr_polytope.empty()) {
        const LatticePolytope P = io::polytope_from_json(load("polytope", tr_polytope));
        result = io::to_json(polytope_measure(P));
        result["binomials"] =
            io::to_json(canonical_model_binomials(P, tr_k, tr_markers == "lattice" ? MarkerMode::LatticePoints : MarkerMode::Vertices));
      } else {
        throw Error(ErrorKind::InvalidInput, "toric needs --polytope or --catalog");
      }
    } else if (cfg.command == "check") {
      const auto kv = parse_inputs(ck_inputs);
      const double error = opt_or(kv, "error", 0.0);
      if (ck_what == "main") {
        result = io::to_json(main_conjecture_check(need(kv, "h"), need(kv, "mu_C"), need(kv, "vol"),
                                                   static_cast<int>(need(kv, "n")), error));
      } else if (ck_what == "diagonal") {
        std::vector<BigInt> a;
        if (!kv.count("a")) throw Error(ErrorKind::InvalidInput, "--inputs is missing a");
        for (const auto& s : split(kv.at("a"), ':')) a.push_back(BigInt(s));
        const DiagonalForm X = DiagonalForm::make(static_cast<int>(need(kv, "d")), static_cast<int>(need(kv, "n")), a);
        InequalityReport r = InequalityReport::compare(need(kv, "h"), diagonal_bound_rhs(X), error,
                                                       {{"form", X.to_form().to_string()}});
        result = io::to_json(r);
      } else if (ck_what == "minpoint") {
        InequalityReport r = InequalityReport::compare(
            need(kv, "min_H"), min_point_bound(need(kv, "mu_C"), need(kv, "vol"), static_cast<int>(need(kv, "n"))), error,
            {{"min_H", kv.at("min_H")}});
        result = io::to_json(r);
      } else if (ck_what == "zhang") {
        std::vector<double> e;
        if (!kv.count("e")) throw Error(ErrorKind::InvalidInput, "--inputs is missing e");
        for (const auto& s : split(kv.at("e"), ':')) e.push_back(to_double("e", s));
        std::optional<double> mu_R;
        if (kv.count("mu_R")) mu_R = need(kv, "mu_R");
        result = io::to_json(zhang_report(e, need(kv, "h_hat"), error, mu_R));
      } else {
        result = {{"product", ej_product(need(kv, "min_H"), need(kv, "theta"))}};
      }
    } else if (cfg.command == "study-xa") {
      std::vector<BigInt> grid;
      for (const auto& s : split(xa_a, ',')) {
        try {
          grid.push_back(BigInt(s));
        } catch (const std::exception&) {
          throw Error(ErrorKind::InvalidInput, "--a entry '" + s + "' is not an integer");
        }
      }
      XaOptions o;
      o.B_cap = xa_cap;
      o.P_max = xa_pmax;
      o.r_max = xa_rmax;
      const XaStudy s = xa_study(xa_d, xa_n, grid, o);
      result = io::to_json(s);
      if (cfg.plot) {
        Series minh{"min H", {}, {}}, proxy{"exp h proxy", {}, {}}, root{"a^(1/d)", {}, {}};
        for (const auto& row : s.rows) {
          const double a = row.a.convert_to<double>();
          if (row.min_H) minh.x.push_back(a), minh.y.push_back(*row.min_H);
          proxy.x.push_back(a), proxy.y.push_back(row.exp_h_proxy);
          root.x.push_back(a), root.y.push_back(row.a_root);
        }
        artifacts.push_back({"study-xa.svg", loglog_svg("X_a growth, d=" + std::to_string(xa_d) + ", n=" + std::to_string(xa_n),
                                                        "a", "value", {minh, proxy, root})});
      }
    } else if (cfg.command == "peyre") {
      result = io::to_json(peyre_assemble(py_eta, py_mu_c, py_mu_r, py_field == "qi" ? FieldShape::gaussian() : FieldShape::rationals()));
    }

    std::string text;
    if (cfg.format == OutputFormat::Csv) {
      auto csv = to_csv(cfg.command, result);
      if (!csv) throw Error(ErrorKind::InvalidInput, "command " + cfg.command + " has no CSV form");
      text = *csv;
    } else {
      text = result.dump(2) + "\n";
    }
    out << text;

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    for (const auto& [name, body] : artifacts) {
      std::ofstream f(cfg.out_dir + "/" + name);
      f << body;
      if (!f) err << json{{"warning", "cannot write " + name}}.dump() << "\n";
    }
    json manifest = {{"command", cfg.command},
                     {"flags", cfg.flags},
                     {"inputs_sha256", sha256_hex(inputs.canonical())},
                     {"result_sha256", sha256_hex(text)},
                     {"version", kVersion},
                     {"seeds", json::array()},
                     {"threads", cfg.threads},
                     {"cache", {{"enabled", cache.enabled()}, {"hit", cache.last_hit()}}}};
    json names = json::array();
    for (const auto& a : artifacts) names.push_back(a.first);
    manifest["artifacts"] = names;
    std::ofstream mf(cfg.out_dir + "/" + cfg.command + ".manifest.json");
    mf << manifest.dump(2) << "\n";
    if (!mf) err << json{{"warning", "cannot write manifest"}}.dump() << "\n";
    return 0;
  } catch (const Error& e) {
    err << json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump() << "\n";
    return is_resource_failure(e.kind()) ? 3 : 2;
  } catch (const json::exception& e) {
    err << json{{"error", "InvalidInput"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << json{{"error", "InvalidInput"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
}

}  // namespace heightlab::cli

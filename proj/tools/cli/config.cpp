#include "cli/config.hpp"

#include <cstdlib>
#include <fstream>

#include "heightlab/error.hpp"

namespace heightlab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw Error(ErrorKind::InvalidInput, "config key " + key + ": expected a boolean, got '" + v + "'");
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::InvalidInput, path + ":" + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) {
    try {
      if (k == "tol") {
        cfg.tol = std::stod(v);
      } else if (k == "threads") {
        cfg.threads = std::stoi(v);
      } else if (k == "cache_dir") {
        cfg.cache_dir = v;
      } else if (k == "cache") {
        cfg.cache = parse_bool(k, v);
      } else if (k == "format") {
        if (v == "json") cfg.format = OutputFormat::Json;
        else if (v == "csv") cfg.format = OutputFormat::Csv;
        else throw Error(ErrorKind::InvalidInput, "format must be json or csv");
      } else if (k == "plot") {
        cfg.plot = parse_bool(k, v);
      } else if (k == "out_dir") {
        cfg.out_dir = v;
      } else {
        throw Error(ErrorKind::InvalidInput, "unknown config key '" + k + "'");
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidInput, "config key " + k + ": bad value '" + v + "'");
    }
  }
  if (cfg.threads < 0) throw Error(ErrorKind::InvalidInput, "threads must be >= 0");
  if (!(cfg.tol > 0)) throw Error(ErrorKind::InvalidInput, "tol must be positive");
}

std::string default_cache_dir() {
  if (const char* env = std::getenv("HEIGHTLAB_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::string(xdg) + "/heightlab";
  if (const char* home = std::getenv("HOME"); home && *home) return std::string(home) + "/.cache/heightlab";
  return ".heightlab-cache";
}

}  // namespace heightlab::cli

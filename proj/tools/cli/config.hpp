#pragma once

#include <map>
#include <optional>
#include <string>

namespace heightlab::cli {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  std::string command;
  std::map<std::string, std::string> flags;  // as given, for hashing
  double tol = 1e-10;
  int threads = 0;  // 0: OpenMP default
  std::string cache_dir;
  bool cache = true;
  OutputFormat format = OutputFormat::Json;
  bool plot = false;
  std::string out_dir = ".";
};

// key=value lines; '#' starts a comment. Unknown keys are an input error.
std::map<std::string, std::string> read_config_file(const std::string& path);

// Defaults, then the config file, then HEIGHTLAB_CACHE, then flags.
void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& kv);

std::string default_cache_dir();

}  // namespace heightlab::cli

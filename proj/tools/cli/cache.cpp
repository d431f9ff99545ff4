#include "cli/cache.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unistd.h>

namespace heightlab::cli {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

Cache::Cache(std::string dir, bool enabled, std::ostream* warn)
    : dir_(std::move(dir)), enabled_(enabled && !dir_.empty()), warn_(warn) {}

std::string Cache::path_for(const std::string& key) const { return dir_ + "/" + key + ".json"; }

void Cache::warn(const std::string& msg) {
  if (warn_) *warn_ << "{\"warning\": \"cache: " << msg << "\"}\n";
}

std::string Cache::get_put(const std::string& op, const std::string& canonical_input,
                           const std::function<std::string()>& compute,
                           const std::function<bool(const std::string&)>& valid) {
  last_hit_ = false;
  if (!enabled_) return compute();
  const std::string key = sha256_hex(op + "\n" + canonical_input);
  const std::string path = path_for(key);

  std::error_code ec;
  if (fs::exists(path, ec)) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string value = ss.str();
    if (in && valid(value)) {
      last_hit_ = true;
      return value;
    }
    warn("corrupted entry " + key + ", recomputing");
  }

  std::string value = compute();
  fs::create_directories(dir_, ec);
  if (ec) {
    warn("cannot create " + dir_ + ": " + ec.message());
    return value;
  }
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  const std::string tmp = path + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(stamp);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << value;
    if (!out) {
      warn("cannot write " + tmp);
      fs::remove(tmp, ec);
      return value;
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    warn("cannot rename into " + path + ": " + ec.message());
    fs::remove(tmp, ec);
  }
  return value;
}

}  // namespace heightlab::cli

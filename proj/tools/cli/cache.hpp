#pragma once

#include <functional>
#include <iosfwd>
#include <string>

namespace heightlab::cli {

std::string sha256_hex(const std::string& data);

/// Content-addressed store of serialized results.
class Cache {
 public:
  Cache(std::string dir, bool enabled, std::ostream* warn);

  // Entry for hash(op, canonical_input); `valid` rejects corrupted entries,
  // which are then recomputed and overwritten.
  std::string get_put(const std::string& op, const std::string& canonical_input,
                      const std::function<std::string()>& compute,
                      const std::function<bool(const std::string&)>& valid);

  bool enabled() const { return enabled_; }
  bool last_hit() const { return last_hit_; }
  std::string path_for(const std::string& key) const;

 private:
  void warn(const std::string& msg);

  std::string dir_;
  bool enabled_;
  bool last_hit_ = false;
  std::ostream* warn_;
};

}  // namespace heightlab::cli

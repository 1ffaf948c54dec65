#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace bqf {

inline constexpr int kCacheVersion = 1;

enum class CacheKind { classes, zeta, qseries, expsum };
const char* cache_kind_name(CacheKind k);

// Flat-file store: <dir>/<kind>/<fnv64(key)>.json holding version, key and
// payload. Writes go to a temp file first and are renamed into place.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir);
  // BQF_CACHE_DIR, else ./.bqf-cache; BQF_CACHE_DIR="" or "off" disables
  static Cache from_env();
  static Cache disabled();

  bool enabled() const { return enabled_; }
  const std::filesystem::path& dir() const { return dir_; }

  std::optional<std::string> get(CacheKind kind, const std::string& key) const;
  void put(CacheKind kind, const std::string& key, const std::string& payload) const;

 private:
  std::filesystem::path file_for(CacheKind kind, const std::string& key) const;
  std::filesystem::path dir_;
  bool enabled_ = true;
};

// installs a zeta store backed by `cache` (ZetaRational <-> JSON payload)
void install_zeta_cache(const Cache& cache);

}  // namespace bqf

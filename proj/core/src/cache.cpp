#include "bqf/cache.hpp"

#include "bqf/report.hpp"
#include "bqf/zeta.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace bqf {

namespace fs = std::filesystem;
using nlohmann::json;

const char* cache_kind_name(CacheKind k) {
  switch (k) {
    case CacheKind::classes: return "classes";
    case CacheKind::zeta: return "zeta";
    case CacheKind::qseries: return "qseries";
    case CacheKind::expsum: return "expsum";
  }
  return "unknown";
}

namespace {
std::string fnv64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}
std::atomic<unsigned> g_tmp_counter{0};
}  // namespace

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {}

Cache Cache::from_env() {
  const char* e = std::getenv("BQF_CACHE_DIR");
  if (e == nullptr) return Cache(fs::path(".bqf-cache"));
  std::string s(e);
  if (s.empty() || s == "off") return disabled();
  return Cache(fs::path(s));
}

Cache Cache::disabled() {
  Cache c{fs::path()};
  c.enabled_ = false;
  return c;
}

fs::path Cache::file_for(CacheKind kind, const std::string& key) const {
  return dir_ / cache_kind_name(kind) / (fnv64(key) + ".json");
}

std::optional<std::string> Cache::get(CacheKind kind, const std::string& key) const {
  if (!enabled_) return std::nullopt;
  std::ifstream in(file_for(kind, key));
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    auto j = json::parse(ss.str());
    // a hash collision or an older layout is just a miss
    if (j.at("version").get<int>() != kCacheVersion || j.at("key").get<std::string>() != key) return std::nullopt;
    return j.at("payload").get<std::string>();
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void Cache::put(CacheKind kind, const std::string& key, const std::string& payload) const {
  if (!enabled_) return;
  fs::path target = file_for(kind, key);
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  if (ec) return;  // read-only location: run without the cache
  json j{{"version", kCacheVersion}, {"kind", cache_kind_name(kind)}, {"key", key}, {"payload", payload}};
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(g_tmp_counter++);
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;
    out << j.dump();
    if (!out) {
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) fs::remove(tmp, ec);
}

namespace {

class CachedZetaStore : public ZetaStore {
 public:
  explicit CachedZetaStore(Cache c) : cache_(std::move(c)) {}

  std::optional<ZetaRational> load(const std::string& key) override {
    auto p = cache_.get(CacheKind::zeta, key);
    if (!p) return std::nullopt;
    try {
      auto j = json::parse(*p);
      unsigned bits = j.at("bits").get<unsigned>();
      PrecisionScope ps(bits);
      ZetaRational z;
      z.D = j.at("D").get<Int>();
      z.k = j.at("k").get<int>();
      z.N = j.at("N").get<Int>();
      z.value.value = parse_rational(j.at("value").get<std::string>());
      z.value.method = static_cast<RationalMethod>(j.at("method").get<int>());
      z.value.denominator_bound = BigInt(j.at("den_bound").get<std::string>());
      z.value.verified_at_two_precisions = j.at("verified").get<bool>();
      z.numeric = Real(j.at("numeric").get<std::string>());
      z.err = Real(j.at("err").get<std::string>());
      return z;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void save(const std::string& key, const ZetaRational& z) override {
    // the stored value keeps its own precision; print at that width
    unsigned bits = static_cast<unsigned>(mpfr_get_prec(z.numeric.backend().data()));
    json j{{"bits", bits},
           {"D", z.D},
           {"k", z.k},
           {"N", z.N},
           {"value", to_string(z.value.value)},
           {"method", static_cast<int>(z.value.method)},
           {"den_bound", z.value.denominator_bound.str()},
           {"verified", z.value.verified_at_two_precisions},
           {"numeric", real_to_string(z.numeric, bits)},
           {"err", real_to_string(z.err, bits)}};
    cache_.put(CacheKind::zeta, key, j.dump());
  }

 private:
  Cache cache_;
};

}  // namespace

void install_zeta_cache(const Cache& cache) {
  if (!cache.enabled()) {
    set_zeta_store(nullptr);
    return;
  }
  set_zeta_store(std::make_shared<CachedZetaStore>(cache));
}

}  // namespace bqf

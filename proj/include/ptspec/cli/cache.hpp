#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace ptspec::cli {

std::uint64_t fnv1a(std::string_view data);

struct CacheEntry {
  std::string key;
  int exit_code = 0;
  std::int64_t created_at = 0;
  std::string payload;
};

/// One file per entry at <dir>/<key[0:2]>/<key>.entry:
///
///   ptspec-cache 1 <key> <exit> <created> <bytes> <payload fnv1a hex>\n
///   <payload>
///
/// Entries failing any header or checksum test are deleted and reported as
/// misses.  Filesystem errors disable the cache with one warning.
class Cache {
 public:
  Cache(std::filesystem::path dir, std::ostream& warnings);

  bool enabled() const noexcept { return enabled_; }
  std::optional<CacheEntry> lookup(const std::string& key);
  void store(const CacheEntry& entry);
  std::filesystem::path path_for(const std::string& key) const;

  /// Hex digest of the canonical request text.
  static std::string make_key(std::string_view canonical);

 private:
  void disable(const std::string& why);

  std::filesystem::path dir_;
  std::ostream& warnings_;
  bool enabled_ = true;
};

}  // namespace ptspec::cli

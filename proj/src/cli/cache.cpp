#include "ptspec/cli/cache.hpp"

#include <chrono>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>

namespace ptspec::cli {

namespace {

constexpr std::string_view kMagic = "ptspec-cache";
constexpr int kLayoutVersion = 1;

std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

}  // namespace

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Cache::Cache(std::filesystem::path dir, std::ostream& warnings)
    : dir_(std::move(dir)), warnings_(warnings) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) disable("cannot create " + dir_.string() + ": " + ec.message());
}

std::string Cache::make_key(std::string_view canonical) {
  const std::string salted = std::string("ptspec\x1f") + std::string(canonical);
  return hex64(fnv1a(canonical)) + hex64(fnv1a(salted));
}

std::filesystem::path Cache::path_for(const std::string& key) const {
  return dir_ / key.substr(0, 2) / (key + ".entry");
}

void Cache::disable(const std::string& why) {
  if (enabled_) warnings_ << "ptspec: warning: cache disabled: " << why << '\n';
  enabled_ = false;
}

std::optional<CacheEntry> Cache::lookup(const std::string& key) {
  if (!enabled_) return std::nullopt;
  const auto path = path_for(key);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;

  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  const std::string content((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  in.close();

  const auto evict = [&] {
    std::filesystem::remove(path, ec);
    return std::nullopt;
  };
  const auto newline = content.find('\n');
  if (newline == std::string::npos) return evict();
  std::istringstream header(content.substr(0, newline));
  std::string magic, stored_key, digest;
  int layout = 0;
  CacheEntry entry;
  std::size_t bytes = 0;
  if (!(header >> magic >> layout >> stored_key >> entry.exit_code >>
        entry.created_at >> bytes >> digest)) {
    return evict();
  }
  entry.payload = content.substr(newline + 1);
  if (magic != kMagic || layout != kLayoutVersion || stored_key != key ||
      entry.payload.size() != bytes || digest != hex64(fnv1a(entry.payload))) {
    return evict();
  }
  entry.key = key;
  return entry;
}

void Cache::store(const CacheEntry& entry) {
  if (!enabled_) return;
  const auto path = path_for(entry.key);
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) return disable(ec.message());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return disable("cannot write " + tmp);
    out << kMagic << ' ' << kLayoutVersion << ' ' << entry.key << ' '
        << entry.exit_code << ' ' << entry.created_at << ' '
        << entry.payload.size() << ' ' << hex64(fnv1a(entry.payload)) << '\n'
        << entry.payload;
    if (!out) return disable("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) disable(ec.message());
}

}  // namespace ptspec::cli

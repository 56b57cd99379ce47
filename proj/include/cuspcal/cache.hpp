#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cuspcal::cache {

/// CRC-32 of the content as eight hex digits.
std::string checksum(const std::string& content);

struct Entry {
  std::string key;
  std::string checksum;
  std::uintmax_t bytes = 0;
};

/// Directory of JSON documents keyed by name, written atomically.
class Store {
 public:
  explicit Store(std::filesystem::path dir) : dir_(std::move(dir)) {}
  /// $CUSPCAL_CACHE, or ./.cache.
  static Store from_env();

  const std::filesystem::path& dir() const { return dir_; }
  static std::string gl2_key(long long Q) { return "gl2-q" + std::to_string(Q); }

  std::optional<std::string> load(const std::string& key) const;
  /// Writes via a temporary file and rename; returns the checksum.
  std::string put(const std::string& key, const std::string& content) const;
  /// Stored content, or the generated one (not persisted) when absent.
  std::string get_or(const std::string& key, const std::function<std::string()>& generate) const;
  void clear() const;
  std::vector<Entry> status() const;

 private:
  std::filesystem::path dir_;
  std::filesystem::path path_of(const std::string& key) const { return dir_ / (key + ".json"); }
};

}  // namespace cuspcal::cache

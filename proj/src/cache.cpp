#include "cuspcal/cache.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <boost/crc.hpp>

#include "cuspcal/error.hpp"

namespace cuspcal::cache {

namespace fs = std::filesystem;

std::string checksum(const std::string& content) {
  boost::crc_32_type crc;
  crc.process_bytes(content.data(), content.size());
  std::ostringstream os;
  os << std::hex << std::setw(8) << std::setfill('0') << crc.checksum();
  return os.str();
}

Store Store::from_env() {
  const char* env = std::getenv("CUSPCAL_CACHE");
  return Store(env && *env ? fs::path(env) : fs::path(".cache"));
}

std::optional<std::string> Store::load(const std::string& key) const {
  std::ifstream in(path_of(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Store::put(const std::string& key, const std::string& content) const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) fail("cache directory " + dir_.string() + " is not writable: " + ec.message());
  const fs::path target = path_of(key);
  const fs::path tmp = dir_ / (key + ".json.tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail("cache directory " + dir_.string() + " is not writable");
    out << content;
    if (!out.flush()) fail("failed writing " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) fail("failed to move " + tmp.string() + " into place: " + ec.message());
  return checksum(content);
}

std::string Store::get_or(const std::string& key, const std::function<std::string()>& generate) const {
  if (auto hit = load(key)) return *hit;
  return generate();
}

void Store::clear() const {
  std::error_code ec;
  if (!fs::exists(dir_, ec)) return;
  for (const auto& e : fs::directory_iterator(dir_)) {
    const auto name = e.path().filename().string();
    if (e.is_regular_file() && (e.path().extension() == ".json" || name.ends_with(".json.tmp")))
      fs::remove(e.path());
  }
}

std::vector<Entry> Store::status() const {
  std::vector<Entry> out;
  std::error_code ec;
  if (!fs::exists(dir_, ec)) return out;
  for (const auto& e : fs::directory_iterator(dir_)) {
    if (!e.is_regular_file() || e.path().extension() != ".json") continue;
    const std::string key = e.path().stem().string();
    out.push_back({key, checksum(*load(key)), e.file_size()});
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
  return out;
}

}  // namespace cuspcal::cache

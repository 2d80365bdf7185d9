#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace rtnq::cli {

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

std::string iso_timestamp(std::chrono::system_clock::time_point t);

/// Ordered key = value pairs of a resolved command configuration.
class ResolvedConfig {
 public:
  void add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

  /// "[section]" followed by one key=value line per entry; readable by --config.
  std::string to_ini(const std::string& section) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct RunManifest {
  std::string tool_version;
  std::string command;
  ResolvedConfig config;
  std::string rng_algorithm;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::chrono::system_clock::time_point started;
  std::chrono::system_clock::time_point finished;
  std::vector<std::filesystem::path> outputs;  // relative to the output directory

  /// Writes <dir>/manifest.json via a temporary file and rename, checksumming every output.
  void write_atomically(const std::filesystem::path& dir) const;
};

}  // namespace rtnq::cli

#include "rtnq/cli/manifest.hpp"

#include <array>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

namespace rtnq::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
  std::array<char, 1 << 16> buffer{};
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string iso_timestamp(std::chrono::system_clock::time_point t) {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(t)));
}

std::string ResolvedConfig::to_ini(const std::string& section) const {
  std::string text = "[" + section + "]\n";
  for (const auto& [key, value] : entries_) text += key + "=" + value + "\n";
  return text;
}

void RunManifest::write_atomically(const std::filesystem::path& dir) const {
  nlohmann::ordered_json j;
  j["tool"] = "rtnq";
  j["version"] = tool_version;
  j["command"] = command;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config.entries()) cfg[key] = value;
  j["config"] = cfg;
  j["rng"] = {{"algorithm", rng_algorithm}, {"seed", seed}};
  j["threads"] = threads;
  j["started_at"] = iso_timestamp(started);
  j["finished_at"] = iso_timestamp(finished);
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto& rel : outputs) {
    const auto full = dir / rel;
    files.push_back({{"file", rel.generic_string()},
                     {"bytes", std::filesystem::file_size(full)},
                     {"sha256", sha256_file(full)}});
  }
  j["outputs"] = files;

  const auto target = dir / "manifest.json";
  const auto temp = dir / "manifest.json.tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + temp.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + temp.string());
  }
  std::filesystem::rename(temp, target);
}

}  // namespace rtnq::cli

#pragma once

// Local result cache. A record is keyed by the SHA-256 of the canonical
// config serialization and is only returned when both the fingerprint and
// the artifact version match. Writes go to a temp file and are renamed into
// place.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "ramify/errors.hpp"

namespace ramify {

inline constexpr const char *kArtifactVersion = "1.0.0";

inline std::string sha256_hex(const std::string &data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

struct CacheRecord {
  std::string fingerprint;
  std::string version;
  std::string timestamp;
  std::string kind;     // "census" | "bounds" | "family" | ...
  bool complete = true; // false for budget-truncated partial results
  std::string payload;  // emitted bytes, verbatim
};

class ResultCache {
public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::string fingerprint(const std::string &canonical_config) {
    return sha256_hex(std::string(kArtifactVersion) + '\n' + canonical_config);
  }

  std::optional<CacheRecord> load(const std::string &fp) const {
    std::ifstream in(path_for(fp), std::ios::binary);
    if (!in)
      return std::nullopt;
    nlohmann::ordered_json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception &) {
      return std::nullopt;
    }
    CacheRecord r;
    r.fingerprint = j.value("fingerprint", "");
    r.version = j.value("version", "");
    r.timestamp = j.value("timestamp", "");
    r.kind = j.value("kind", "");
    r.complete = j.value("complete", false);
    r.payload = j.value("payload", "");
    if (r.fingerprint != fp || r.version != kArtifactVersion)
      return std::nullopt;
    return r;
  }

  void store(CacheRecord r) const {
    std::filesystem::create_directories(dir_);
    r.version = kArtifactVersion;
    if (r.timestamp.empty())
      r.timestamp = utc_now();
    nlohmann::ordered_json j;
    j["fingerprint"] = r.fingerprint;
    j["version"] = r.version;
    j["timestamp"] = r.timestamp;
    j["kind"] = r.kind;
    j["complete"] = r.complete;
    j["payload"] = r.payload;
    const auto final_path = path_for(r.fingerprint);
    auto tmp = final_path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out)
        throw Error("cannot write cache file " + tmp.string());
      out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, final_path);
  }

  std::filesystem::path path_for(const std::string &fp) const { return dir_ / (fp + ".json"); }

private:
  static std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  std::filesystem::path dir_;
};

} // namespace ramify

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace gramnet {

// FNV-1a 64-bit content digest, as a 16-digit hex string.
std::string content_digest(std::string_view bytes);
std::string file_digest(const std::filesystem::path& path);

// Bookkeeping for one output directory: configuration digest, per-stage
// statistics, warnings and a digest of every emitted file. Stored as
// manifest.json inside the output directory (excluded from its own file
// list). No timestamps by default, so reruns stay byte-identical.
class RunManifest {
 public:
  explicit RunManifest(std::filesystem::path output_dir);

  // Loads an existing manifest.json when present, else starts fresh.
  void load();
  // Rescans the output tree and rewrites manifest.json.
  void save();

  void set_config_digest(const std::string& digest);
  // Replaces the stage entry wholesale; per-stage warnings travel inside
  // stats so a rerun never accumulates duplicates.
  void set_stage(const std::string& stage, nlohmann::json stats);
  void set_timing_ms(const std::string& stage, std::int64_t ms);  // opt-in

  const nlohmann::json& data() const { return data_; }
  std::filesystem::path path() const;

 private:
  std::filesystem::path output_dir_;
  nlohmann::json data_;
};

}  // namespace gramnet

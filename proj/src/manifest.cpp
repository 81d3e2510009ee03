#include "gramnet/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <vector>

#include "gramnet/csv.hpp"
#include "gramnet/error.hpp"
#include "gramnet/version.hpp"

namespace gramnet {

std::string content_digest(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open file for digest: " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return content_digest(bytes);
}

RunManifest::RunManifest(std::filesystem::path output_dir)
    : output_dir_(std::move(output_dir)) {
  data_ = nlohmann::json::object();
  data_["tool_version"] = kToolVersion;
  data_["stages"] = nlohmann::json::object();
  data_["files"] = nlohmann::json::object();
}

std::filesystem::path RunManifest::path() const { return output_dir_ / "manifest.json"; }

void RunManifest::load() {
  std::ifstream in(path());
  if (!in) return;
  try {
    data_ = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw data_error("corrupt manifest at " + path().string() + ": " + e.what());
  }
  data_["tool_version"] = kToolVersion;
  if (!data_.contains("stages")) data_["stages"] = nlohmann::json::object();
}

void RunManifest::save() {
  nlohmann::json files = nlohmann::json::object();
  if (std::filesystem::exists(output_dir_)) {
    std::vector<std::filesystem::path> paths;
    for (const auto& entry :
         std::filesystem::recursive_directory_iterator(output_dir_)) {
      if (!entry.is_regular_file()) continue;
      paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) {
      const std::string rel =
          std::filesystem::relative(p, output_dir_).generic_string();
      if (rel == "manifest.json") continue;
      files[rel] = file_digest(p);
    }
  }
  data_["files"] = std::move(files);
  write_file(path(), data_.dump(2) + "\n");
}

void RunManifest::set_config_digest(const std::string& digest) {
  data_["config_digest"] = digest;
}

void RunManifest::set_stage(const std::string& stage, nlohmann::json stats) {
  data_["stages"][stage] = std::move(stats);
}

void RunManifest::set_timing_ms(const std::string& stage, std::int64_t ms) {
  data_["timings_ms"][stage] = ms;
}

}  // namespace gramnet

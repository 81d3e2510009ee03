#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gramnet/bigram.hpp"
#include "gramnet/blockmodel.hpp"
#include "gramnet/keywords.hpp"
#include "gramnet/manifest.hpp"
#include "gramnet/preprocess.hpp"

namespace gramnet {

// Whole-pipeline configuration, loaded from one JSON file. Relative paths
// resolve against the config file's directory.
struct PipelineConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path stopwords_path;
  std::filesystem::path lemma_dict_path;  // empty = no dictionary
  std::filesystem::path language_model_path;
  std::vector<KeywordSet> keyword_sets;

  int clusters_default = 3;
  std::map<std::string, int> clusters_per_set;

  bool allow_null = true;
  bool allow_complete = true;
  Measure measure = Measure::sum_of_squares;
  DiagonalMode diagonal = DiagonalMode::ignore;
  WeightMode weight_mode = WeightMode::count;

  std::size_t size_cap = 500;
  std::size_t min_core = 95;
  int max_edit = 2;
  int restarts = 50;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware
  bool record_timings = false;

  std::filesystem::path output_dir;
  std::string canonical_json;  // digested into the manifest

  int clusters_for(const std::string& set_name) const;
  BlockSpec block_spec(int k) const;
};

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<std::filesystem::path> output_dir;
  std::optional<int> threads;
  std::optional<bool> record_timings;
};

// Parses and validates the config; referenced paths must exist.
PipelineConfig load_config(const std::filesystem::path& path,
                           const ConfigOverrides& overrides = {});

// Corpus directory listing: one document per "YYYY-MM-DD_<id>.txt" file,
// sorted by filename. Malformed names and duplicate ids are errors.
std::vector<Document> load_corpus(const std::filesystem::path& dir);

// Reads back documents written by the preprocess stage.
std::vector<Document> load_processed_corpus(const std::filesystem::path& dir);

// Edge/node CSV round-trip for networks.
void write_network(const BigramNetwork& net, const std::filesystem::path& edges_csv,
                   const std::filesystem::path& nodes_csv);
BigramNetwork read_network(const std::filesystem::path& edges_csv,
                           const std::filesystem::path& nodes_csv, WeightMode mode);

// Directory-safe variant of a keyword set name.
std::string sanitize_set_name(const std::string& name);

// Pipeline stages. Each reads its inputs from disk, writes its artifacts
// under the output directory and updates the manifest.
void run_preprocess(const PipelineConfig& config, RunManifest& manifest);
void run_network(const PipelineConfig& config, RunManifest& manifest);
void run_extract(const PipelineConfig& config, RunManifest& manifest);
void run_blockmodel(const PipelineConfig& config, RunManifest& manifest);
void run_timeseries(const PipelineConfig& config, RunManifest& manifest);
void run_all(const PipelineConfig& config, RunManifest& manifest);

// Human-readable manifest summary for the `report` subcommand.
std::string report_summary(const RunManifest& manifest);

}  // namespace gramnet

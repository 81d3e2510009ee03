#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gramnet/error.hpp"
#include "gramnet/pipeline.hpp"
#include "gramnet/version.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  gramnet::ConfigOverrides overrides;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("config", opts.config_path, "pipeline configuration file (JSON)")
      ->required();
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t v) { opts.overrides.seed = v; },
      "override the configured random seed");
  cmd->add_option_function<int>(
      "--restarts", [&](int v) { opts.overrides.restarts = v; },
      "override the configured restart count");
  cmd->add_option_function<std::string>(
      "--out", [&](const std::string& v) { opts.overrides.output_dir = v; },
      "override the configured output directory");
  cmd->add_option_function<int>(
      "--threads", [&](int v) { opts.overrides.threads = v; },
      "worker threads (0 = hardware)");
  cmd->add_flag_function(
      "--timings",
      [&](std::int64_t count) { opts.overrides.record_timings = count > 0; },
      "record stage timings in the manifest (makes reruns differ)");
}

int dispatch(const std::string& command, const CliOptions& opts) {
  using namespace gramnet;
  const PipelineConfig config = load_config(opts.config_path, opts.overrides);

  RunManifest manifest(config.output_dir);
  manifest.load();
  manifest.set_config_digest(content_digest(config.canonical_json));

  if (command == "report") {
    std::cout << report_summary(manifest);
    return 0;
  }

  if (command == "preprocess") run_preprocess(config, manifest);
  else if (command == "network") run_network(config, manifest);
  else if (command == "extract") run_extract(config, manifest);
  else if (command == "blockmodel") run_blockmodel(config, manifest);
  else if (command == "timeseries") run_timeseries(config, manifest);
  else if (command == "run") run_all(config, manifest);

  std::cout << "done: " << command << " -> " << config.output_dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-gram network construction and homogeneity blockmodeling for "
               "plain-text corpora"};
  app.set_version_flag("--version", std::string(gramnet::kToolVersion));
  app.require_subcommand(1);

  CliOptions opts;
  const char* commands[] = {"preprocess", "network", "extract", "blockmodel",
                            "timeseries", "run",     "report"};
  const char* descriptions[] = {
      "clean the corpus into lemma sequences",
      "build the corpus-wide bi-gram network",
      "extract and reduce keyword subnetworks",
      "blockmodel each keyword subnetwork",
      "keyword-set occurrence series over time",
      "full pipeline (all stages in order)",
      "print a summary of the run manifest"};
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    add_common_options(app.add_subcommand(commands[i], descriptions[i]), opts);
  }

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, opts);
  } catch (const gramnet::config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const gramnet::data_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

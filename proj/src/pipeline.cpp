#include "gramnet/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "gramnet/csv.hpp"
#include "gramnet/error.hpp"
#include "gramnet/parallel.hpp"
#include "gramnet/subnet.hpp"
#include "gramnet/text.hpp"
#include "gramnet/timeseries.hpp"

namespace gramnet {

namespace {

using nlohmann::json;

std::vector<std::filesystem::path> sorted_txt_files(
    const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

// "YYYY-MM-DD_<id>" -> (date, id)
std::pair<Date, std::string> parse_document_stem(const std::filesystem::path& file) {
  const std::string stem = file.stem().string();
  if (stem.size() < 12 || stem[10] != '_')
    throw data_error("document filename '" + file.filename().string() +
                     "' does not match YYYY-MM-DD_<id>.txt");
  Date date;
  try {
    date = Date::parse(stem.substr(0, 10));
  } catch (const data_error&) {
    throw data_error("document filename '" + file.filename().string() +
                     "' carries a malformed date");
  }
  return {date, stem.substr(11)};
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

LanguageModel train_model_from_path(const std::filesystem::path& source) {
  std::vector<std::vector<std::string>> corpus;
  if (std::filesystem::is_directory(source)) {
    for (const auto& file : sorted_txt_files(source))
      corpus.push_back(normalize(read_text_file(file)));
  } else {
    corpus.push_back(normalize(read_text_file(source)));
  }
  if (corpus.empty()) throw data_error("empty training corpus");
  return train_language_model(corpus);
}

std::filesystem::path preprocessed_dir(const PipelineConfig& config) {
  return config.output_dir / "preprocessed";
}

std::filesystem::path set_dir(const PipelineConfig& config, const KeywordSet& ks) {
  return config.output_dir / "sets" / sanitize_set_name(ks.name());
}

class StageTimer {
 public:
  StageTimer(const PipelineConfig& config, RunManifest& manifest, std::string stage)
      : enabled_(config.record_timings), manifest_(manifest),
        stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    if (!enabled_) return;
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    manifest_.set_timing_ms(
        stage_,
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
  }

 private:
  bool enabled_;
  RunManifest& manifest_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

std::string sanitize_set_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '-' || c == '_';
    out += safe ? c : '_';
  }
  return out.empty() ? "_" : out;
}

std::vector<Document> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw data_error("corpus directory does not exist: " + dir.string());
  const auto files = sorted_txt_files(dir);
  if (files.empty()) throw data_error("no documents found in " + dir.string());

  std::vector<Document> docs;
  std::set<std::string> ids;
  for (const auto& file : files) {
    auto [date, id] = parse_document_stem(file);
    if (!ids.insert(id).second)
      throw data_error("duplicate document id '" + id + "' in " + dir.string());
    Document doc;
    doc.id = id;
    doc.date = date;
    doc.raw_text = read_text_file(file);
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> load_processed_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw data_error("no preprocessed corpus at " + dir.string() +
                     "; run the preprocess stage first");
  const auto files = sorted_txt_files(dir);
  if (files.empty())
    throw data_error("no preprocessed documents in " + dir.string());

  std::vector<Document> docs;
  for (const auto& file : files) {
    auto [date, id] = parse_document_stem(file);
    Document doc;
    doc.id = id;
    doc.date = date;
    doc.tokens = split_tokens(read_text_file(file));
    docs.push_back(std::move(doc));
  }
  return docs;
}

void write_network(const BigramNetwork& net, const std::filesystem::path& edges_csv,
                   const std::filesystem::path& nodes_csv) {
  std::string edges = "source,target,weight\n";
  for (const auto& [edge, w] : net.edges) {
    edges += csv_line({edge.first, edge.second, format_number(w)});
  }
  write_file(edges_csv, edges);

  std::string nodes = "node\n";
  for (const auto& node : net.nodes) nodes += csv_line({node});
  write_file(nodes_csv, nodes);
}

BigramNetwork read_network(const std::filesystem::path& edges_csv,
                           const std::filesystem::path& nodes_csv, WeightMode mode) {
  BigramNetwork net;
  net.weight_mode = mode;

  std::ifstream nodes_in(nodes_csv);
  if (!nodes_in) throw data_error("cannot open node list: " + nodes_csv.string());
  std::string line;
  std::getline(nodes_in, line);  // header
  while (std::getline(nodes_in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) net.nodes.insert(line);
  }

  std::ifstream edges_in(edges_csv);
  if (!edges_in) throw data_error("cannot open edge list: " + edges_csv.string());
  std::getline(edges_in, line);  // header
  std::size_t lineno = 1;
  while (std::getline(edges_in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw data_error("malformed edge at " + edges_csv.string() + ":" +
                       std::to_string(lineno));
    const std::string source = line.substr(0, c1);
    const std::string target = line.substr(c1 + 1, c2 - c1 - 1);
    double weight = 0.0;
    try {
      weight = std::stod(line.substr(c2 + 1));
    } catch (const std::exception&) {
      throw data_error("malformed edge weight at " + edges_csv.string() + ":" +
                       std::to_string(lineno));
    }
    if (net.nodes.count(source) == 0 || net.nodes.count(target) == 0)
      throw data_error("edge endpoint missing from node list at " +
                       edges_csv.string() + ":" + std::to_string(lineno));
    net.edges[{source, target}] = weight;
  }
  return net;
}

void run_preprocess(const PipelineConfig& config, RunManifest& manifest) {
  StageTimer timer(config, manifest, "preprocess");

  std::vector<Document> docs = load_corpus(config.corpus_dir);
  const StopwordList stopwords = load_stopwords(config.stopwords_path);
  const LemmaDictionary lemmas =
      config.lemma_dict_path.empty() ? LemmaDictionary{}
                                     : load_lemma_dictionary(config.lemma_dict_path);
  const LanguageModel model = train_model_from_path(config.language_model_path);

  std::vector<PreprocessStats> stats(docs.size());
  parallel_for(docs.size(), config.threads, [&](std::size_t i) {
    stats[i] = process_document(docs[i], model, stopwords, lemmas, config.max_edit);
  });

  const auto out_dir = preprocessed_dir(config);
  std::string stats_csv =
      "document_id,date,tokens_normalized,tokens_corrected,tokens_after_stopwords,"
      "tokens_final\n";
  PreprocessStats total;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const Document& doc = docs[i];
    std::string body;
    for (std::size_t t = 0; t < doc.tokens.size(); ++t) {
      if (t > 0) body += ' ';
      body += doc.tokens[t];
    }
    body += '\n';
    write_file(out_dir / (doc.date.to_string() + "_" + doc.id + ".txt"), body);

    stats_csv += csv_line({doc.id, doc.date.to_string(),
                           std::to_string(stats[i].tokens_normalized),
                           std::to_string(stats[i].tokens_corrected),
                           std::to_string(stats[i].tokens_after_stopwords),
                           std::to_string(stats[i].tokens_final)});
    total.tokens_normalized += stats[i].tokens_normalized;
    total.tokens_corrected += stats[i].tokens_corrected;
    total.tokens_after_stopwords += stats[i].tokens_after_stopwords;
    total.tokens_final += stats[i].tokens_final;
  }
  write_file(config.output_dir / "preprocess_stats.csv", stats_csv);

  json stage;
  stage["documents"] = docs.size();
  stage["language_model_tokens"] = model.total;
  stage["language_model_vocabulary"] = model.counts.size();
  stage["tokens_normalized"] = total.tokens_normalized;
  stage["tokens_corrected"] = total.tokens_corrected;
  stage["tokens_after_stopwords"] = total.tokens_after_stopwords;
  stage["tokens_final"] = total.tokens_final;
  manifest.set_stage("preprocess", std::move(stage));
  manifest.save();
}

void run_network(const PipelineConfig& config, RunManifest& manifest) {
  StageTimer timer(config, manifest, "network");

  const std::vector<Document> docs = load_processed_corpus(preprocessed_dir(config));
  Corpus corpus;
  corpus.reserve(docs.size());
  for (const auto& doc : docs) corpus.emplace_back(doc.id, doc.tokens);

  BigramNetwork net = build_bigrams(corpus);
  if (config.weight_mode == WeightMode::conditional_probability)
    net = normalize_conditional(net);

  write_network(net, config.output_dir / "network" / "edges.csv",
                config.output_dir / "network" / "nodes.csv");

  json stage;
  stage["documents"] = docs.size();
  stage["nodes"] = net.nodes.size();
  stage["edges"] = net.edges.size();
  stage["weight_mode"] = config.weight_mode == WeightMode::count
                             ? "count"
                             : "conditional_probability";
  manifest.set_stage("network", std::move(stage));
  manifest.save();
}

void run_extract(const PipelineConfig& config, RunManifest& manifest) {
  StageTimer timer(config, manifest, "extract");

  const BigramNetwork net =
      read_network(config.output_dir / "network" / "edges.csv",
                   config.output_dir / "network" / "nodes.csv", config.weight_mode);

  json sets = json::object();
  json warnings = json::array();
  for (const auto& ks : config.keyword_sets) {
    const std::set<std::string> seeds = match_seeds(net, ks);
    if (seeds.empty()) {
      warnings.push_back("keyword set '" + ks.name() +
                         "' matched no lemmas; skipped");
      continue;
    }
    Subnetwork sub = second_order_neighborhood(net, seeds);
    const std::size_t neighborhood_nodes = sub.net.nodes.size();
    sub = reduce_pipeline(sub, config.size_cap, config.min_core);

    const auto dir = set_dir(config, ks);
    write_network(sub.net, dir / "subnetwork_edges.csv",
                  dir / "subnetwork_nodes.csv");

    json meta;
    meta["set"] = ks.name();
    meta["patterns"] = ks.patterns();
    meta["seeds_matched"] = json(std::vector<std::string>(seeds.begin(), seeds.end()));
    meta["seeds_retained"] =
        json(std::vector<std::string>(sub.seeds.begin(), sub.seeds.end()));
    meta["neighborhood_nodes"] = neighborhood_nodes;
    meta["nodes"] = sub.net.nodes.size();
    meta["edges"] = sub.net.edges.size();
    json steps = json::array();
    for (const auto& step : sub.steps) {
      steps.push_back({{"name", step.name},
                       {"nodes_before", step.nodes_before},
                       {"nodes_after", step.nodes_after}});
    }
    meta["reduction_steps"] = std::move(steps);
    // Degree pruning keeps seeds by construction; k-core reduction may not.
    meta["seed_policy"] =
        "degree pruning retains seeds; k-core reduction may drop them";
    write_file(dir / "metadata.json", meta.dump(2) + "\n");

    sets[ks.name()] = {{"seeds", seeds.size()},
                       {"nodes", sub.net.nodes.size()},
                       {"edges", sub.net.edges.size()}};
  }

  json stage;
  stage["sets"] = std::move(sets);
  stage["warnings"] = std::move(warnings);
  manifest.set_stage("extract", std::move(stage));
  manifest.save();
}

void run_blockmodel(const PipelineConfig& config, RunManifest& manifest) {
  StageTimer timer(config, manifest, "blockmodel");

  json sets = json::object();
  json warnings = json::array();
  for (const auto& ks : config.keyword_sets) {
    const auto dir = set_dir(config, ks);
    if (!std::filesystem::exists(dir / "subnetwork_edges.csv")) {
      warnings.push_back("no subnetwork for keyword set '" + ks.name() +
                         "'; skipped");
      continue;
    }
    const BigramNetwork net =
        read_network(dir / "subnetwork_edges.csv", dir / "subnetwork_nodes.csv",
                     config.weight_mode);
    const int k = config.clusters_for(ks.name());
    if (static_cast<std::size_t>(k) > net.nodes.size()) {
      warnings.push_back("keyword set '" + ks.name() + "': cluster count " +
                         std::to_string(k) + " exceeds subnetwork size " +
                         std::to_string(net.nodes.size()) + "; skipped");
      continue;
    }

    const std::vector<std::string> node_order(net.nodes.begin(), net.nodes.end());
    const Matrix matrix = to_matrix(net, node_order);
    const BlockmodelResult result = local_search(
        matrix, config.block_spec(k), config.restarts, config.seed, config.threads);

    std::string partition_csv = "node,cluster\n";
    for (std::size_t i = 0; i < node_order.size(); ++i) {
      partition_csv += csv_line(
          {node_order[i], std::to_string(result.partition.assignment[i])});
    }
    write_file(dir / "partition.csv", partition_csv);

    json report;
    report["set"] = ks.name();
    report["clusters"] = k;
    report["nodes"] = node_order.size();
    report["measure"] = to_string(config.measure);
    report["diagonal"] = config.diagonal == DiagonalMode::ignore ? "ignore"
                                                                 : "include";
    json allowed = json::array();
    if (config.allow_null) allowed.push_back("null");
    if (config.allow_complete) allowed.push_back("complete");
    report["allowed_block_types"] = std::move(allowed);
    report["weight_mode"] = config.weight_mode == WeightMode::count
                                ? "count"
                                : "conditional_probability";
    report["criterion"] = result.criterion;
    report["restarts_run"] = result.restarts_run;
    report["best_restart_index"] = result.best_restart_index;
    report["seed"] = config.seed;
    json type_grid = json::array();
    json ideal_grid = json::array();
    for (int i = 0; i < k; ++i) {
      json type_row = json::array();
      json ideal_row = json::array();
      for (int j = 0; j < k; ++j) {
        type_row.push_back(to_string(result.block_types[i * k + j]));
        ideal_row.push_back(result.block_ideals[i * k + j]);
      }
      type_grid.push_back(std::move(type_row));
      ideal_grid.push_back(std::move(ideal_row));
    }
    report["block_types"] = std::move(type_grid);
    report["block_ideals"] = std::move(ideal_grid);
    write_file(dir / "blockmodel.json", report.dump(2) + "\n");

    const PermutedImage image = permuted_image(matrix, result);
    std::string image_csv = "node";
    for (std::size_t i = 0; i < image.node_order.size(); ++i) {
      image_csv += ',' + csv_field(node_order[image.node_order[i]]);
    }
    image_csv += '\n';
    for (std::size_t i = 0; i < image.node_order.size(); ++i) {
      std::vector<std::string> fields;
      fields.push_back(node_order[image.node_order[i]]);
      for (std::size_t j = 0; j < image.node_order.size(); ++j) {
        fields.push_back(format_number(image.matrix(i, j)));
      }
      image_csv += csv_line(fields);
    }
    write_file(dir / "permuted_matrix.csv", image_csv);

    std::string boundaries = "boundary\n";
    for (std::size_t b : image.boundaries) boundaries += std::to_string(b) + "\n";
    write_file(dir / "permuted_boundaries.csv", boundaries);

    sets[ks.name()] = {{"clusters", k},
                       {"nodes", node_order.size()},
                       {"criterion", result.criterion},
                       {"best_restart_index", result.best_restart_index}};
  }

  json stage;
  stage["sets"] = std::move(sets);
  stage["warnings"] = std::move(warnings);
  manifest.set_stage("blockmodel", std::move(stage));
  manifest.save();
}

void run_timeseries(const PipelineConfig& config, RunManifest& manifest) {
  StageTimer timer(config, manifest, "timeseries");

  const std::vector<Document> docs = load_processed_corpus(preprocessed_dir(config));
  const OccurrenceSeries series = keyword_timeseries(docs, config.keyword_sets);

  std::string csv = "date,document_id,set,relative_frequency\n";
  for (const auto& row : series.rows) {
    csv += csv_line({row.date.to_string(), row.document_id, row.set_name,
                     format_number(row.relative_frequency)});
  }
  write_file(config.output_dir / "timeseries.csv", csv);

  json stage;
  stage["documents"] = docs.size();
  stage["sets"] = config.keyword_sets.size();
  stage["rows"] = series.rows.size();
  manifest.set_stage("timeseries", std::move(stage));
  manifest.save();
}

void run_all(const PipelineConfig& config, RunManifest& manifest) {
  run_preprocess(config, manifest);
  run_network(config, manifest);
  run_extract(config, manifest);
  run_blockmodel(config, manifest);
  run_timeseries(config, manifest);
}

std::string report_summary(const RunManifest& manifest) {
  const json& data = manifest.data();
  std::ostringstream out;
  out << data.value("tool_version", "unknown version") << "\n";
  out << "config digest: " << data.value("config_digest", "(none)") << "\n";

  if (data.contains("stages")) {
    for (const auto& [stage, stats] : data.at("stages").items()) {
      out << "\n[" << stage << "]\n";
      for (const auto& [key, value] : stats.items()) {
        if (key == "warnings") continue;
        out << "  " << key << ": " << value.dump() << "\n";
      }
      if (stats.contains("warnings")) {
        for (const auto& w : stats.at("warnings")) {
          out << "  warning: " << w.get<std::string>() << "\n";
        }
      }
    }
  }
  if (data.contains("timings_ms")) {
    out << "\n[timings]\n";
    for (const auto& [stage, ms] : data.at("timings_ms").items()) {
      out << "  " << stage << ": " << ms.dump() << " ms\n";
    }
  }
  if (data.contains("files")) {
    out << "\nfiles: " << data.at("files").size() << "\n";
  }
  return out.str();
}

}  // namespace gramnet

#include <fstream>
#include <set>

#include <json.hpp>

#include "gramnet/error.hpp"
#include "gramnet/pipeline.hpp"

namespace gramnet {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "corpus",     "stopwords", "lemma_dictionary", "language_model",
    "keyword_sets", "clusters", "block_types",     "measure",
    "diagonal",   "weight_mode", "size_cap",       "min_core",
    "max_edit",   "restarts",  "seed",             "threads",
    "timings",    "output"};

json parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw config_error("config file " + path.string() + " is not valid JSON: " +
                       e.what());
  }
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() ? p : base / p;
}

void require_exists(const std::filesystem::path& p, const std::string& what) {
  if (!std::filesystem::exists(p))
    throw config_error(what + " does not exist: " + p.string());
}

template <class T>
T get_or(const json& doc, const std::string& key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw config_error("config field '" + key + "' has the wrong type");
  }
}

}  // namespace

int PipelineConfig::clusters_for(const std::string& set_name) const {
  auto it = clusters_per_set.find(set_name);
  return it == clusters_per_set.end() ? clusters_default : it->second;
}

BlockSpec PipelineConfig::block_spec(int k) const {
  BlockSpec spec;
  spec.k = k;
  spec.allow_null = allow_null;
  spec.allow_complete = allow_complete;
  spec.measure = measure;
  spec.diagonal = diagonal;
  return spec;
}

PipelineConfig load_config(const std::filesystem::path& path,
                           const ConfigOverrides& overrides) {
  json doc = parse_config_file(path);
  if (!doc.is_object()) throw config_error("config root must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (kKnownKeys.count(key) == 0)
      throw config_error("unknown config field '" + key + "'");
  }

  // Overrides fold into the document so the recorded digest reflects the
  // effective configuration.
  if (overrides.seed) doc["seed"] = *overrides.seed;
  if (overrides.restarts) doc["restarts"] = *overrides.restarts;
  if (overrides.output_dir) doc["output"] = overrides.output_dir->string();
  if (overrides.threads) doc["threads"] = *overrides.threads;
  if (overrides.record_timings) doc["timings"] = *overrides.record_timings;

  for (const char* key : {"corpus", "stopwords", "language_model", "keyword_sets",
                          "output"}) {
    if (!doc.contains(key))
      throw config_error(std::string("config is missing required field '") + key +
                         "'");
  }

  const std::filesystem::path base = path.has_parent_path()
                                         ? path.parent_path()
                                         : std::filesystem::path(".");

  PipelineConfig config;
  config.corpus_dir = resolve(base, get_or<std::string>(doc, "corpus", ""));
  require_exists(config.corpus_dir, "corpus directory");
  if (!std::filesystem::is_directory(config.corpus_dir))
    throw config_error("corpus path is not a directory: " +
                       config.corpus_dir.string());

  config.stopwords_path = resolve(base, get_or<std::string>(doc, "stopwords", ""));
  require_exists(config.stopwords_path, "stopword list");

  if (doc.contains("lemma_dictionary")) {
    config.lemma_dict_path =
        resolve(base, get_or<std::string>(doc, "lemma_dictionary", ""));
    require_exists(config.lemma_dict_path, "lemma dictionary");
  }

  config.language_model_path =
      resolve(base, get_or<std::string>(doc, "language_model", ""));
  require_exists(config.language_model_path, "language model source");

  // Keyword sets: inline object or path to a JSON file.
  const json& ks = doc.at("keyword_sets");
  if (ks.is_string()) {
    const auto ks_path = resolve(base, ks.get<std::string>());
    require_exists(ks_path, "keyword set file");
    config.keyword_sets = load_keyword_sets(ks_path);
  } else if (ks.is_object()) {
    config.keyword_sets = parse_keyword_sets(ks.dump());
  } else {
    throw config_error("'keyword_sets' must be a path or an object");
  }
  if (config.keyword_sets.empty())
    throw config_error("configuration defines no keyword sets");

  // Cluster counts: a single integer or {"default": n, "<set>": n, ...}.
  if (doc.contains("clusters")) {
    const json& cl = doc.at("clusters");
    if (cl.is_number_integer()) {
      config.clusters_default = cl.get<int>();
    } else if (cl.is_object()) {
      for (const auto& [name, value] : cl.items()) {
        if (!value.is_number_integer())
          throw config_error("cluster count for '" + name + "' must be an integer");
        if (name == "default") {
          config.clusters_default = value.get<int>();
        } else {
          const bool known = std::any_of(
              config.keyword_sets.begin(), config.keyword_sets.end(),
              [&](const KeywordSet& s) { return s.name() == name; });
          if (!known)
            throw config_error("cluster count given for unknown keyword set '" +
                               name + "'");
          config.clusters_per_set[name] = value.get<int>();
        }
      }
    } else {
      throw config_error("'clusters' must be an integer or an object");
    }
  }
  if (config.clusters_default < 1)
    throw config_error("default cluster count must be at least 1");
  for (const auto& [name, k] : config.clusters_per_set) {
    if (k < 1)
      throw config_error("cluster count for '" + name + "' must be at least 1");
  }

  if (doc.contains("block_types")) {
    const json& types = doc.at("block_types");
    if (!types.is_array() || types.empty())
      throw config_error("'block_types' must be a non-empty list");
    config.allow_null = false;
    config.allow_complete = false;
    for (const auto& t : types) {
      const std::string name = t.get<std::string>();
      if (name == "null") config.allow_null = true;
      else if (name == "complete") config.allow_complete = true;
      else throw config_error("unknown block type '" + name + "'");
    }
  }

  const std::string measure = get_or<std::string>(doc, "measure", "sum_of_squares");
  if (measure == "sum_of_squares") config.measure = Measure::sum_of_squares;
  else if (measure == "absolute_deviation") config.measure = Measure::absolute_deviation;
  else throw config_error("unknown measure '" + measure + "'");

  const std::string diagonal = get_or<std::string>(doc, "diagonal", "ignore");
  if (diagonal == "ignore") config.diagonal = DiagonalMode::ignore;
  else if (diagonal == "include") config.diagonal = DiagonalMode::include;
  else throw config_error("unknown diagonal mode '" + diagonal + "'");

  const std::string mode = get_or<std::string>(doc, "weight_mode", "count");
  if (mode == "count") config.weight_mode = WeightMode::count;
  else if (mode == "conditional_probability")
    config.weight_mode = WeightMode::conditional_probability;
  else throw config_error("unknown weight mode '" + mode + "'");

  config.size_cap = get_or<std::size_t>(doc, "size_cap", 500);
  config.min_core = get_or<std::size_t>(doc, "min_core", 95);
  config.max_edit = get_or<int>(doc, "max_edit", 2);
  config.restarts = get_or<int>(doc, "restarts", 50);
  config.seed = get_or<std::uint64_t>(doc, "seed", 0);
  config.threads = get_or<int>(doc, "threads", 0);
  config.record_timings = get_or<bool>(doc, "timings", false);
  config.output_dir = resolve(base, get_or<std::string>(doc, "output", "out"));

  if (config.size_cap < 1) throw config_error("size_cap must be at least 1");
  if (config.min_core < 1) throw config_error("min_core must be at least 1");
  if (config.max_edit < 1 || config.max_edit > 2)
    throw config_error("max_edit must be 1 or 2");
  if (config.restarts < 1) throw config_error("restarts must be at least 1");
  if (config.threads < 0) throw config_error("threads must be non-negative");

  // Set names must stay distinct once mapped to directory names.
  std::set<std::string> sanitized;
  for (const auto& ks_set : config.keyword_sets) {
    if (!sanitized.insert(sanitize_set_name(ks_set.name())).second)
      throw config_error("keyword set names collide after sanitization: '" +
                         ks_set.name() + "'");
  }

  // Execution knobs stay out of the digest so thread count never changes
  // recorded provenance.
  json digest_doc = doc;
  digest_doc.erase("threads");
  digest_doc.erase("timings");
  config.canonical_json = digest_doc.dump();

  return config;
}

}  // namespace gramnet

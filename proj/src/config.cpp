#include "multinet/config.hpp"

#include <set>
#include <utility>

#include "json.hpp"
#include "multinet/io.hpp"
#include "multinet/version.hpp"

namespace multinet {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ValidationError("config: " + (path.empty() ? "top level" : path) +
                        ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// One JSON object plus the bookkeeping for unknown-key rejection.  Callers
// read fields through the typed getters and then call finish(), which flags
// any key that was never requested.
class Section {
 public:
  Section(const json& value, std::string path) : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) bad(path_, "expected an object");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = value_.find(key);
    return it == value_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) bad(join(path_, key), "missing required key");
    return *v;
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_boolean()) bad(join(path_, key), "expected true or false");
    return v->get<bool>();
  }

  int integer(const std::string& key, int fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    return to_int(*v, join(path_, key));
  }

  int required_integer(const std::string& key) {
    return to_int(require(key), join(path_, key));
  }

  std::uint64_t unsigned64(const std::string& key, std::uint64_t fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_number_integer() && !v->is_number_unsigned()) {
      bad(join(path_, key), "expected an integer");
    }
    if (v->is_number_integer() && v->get<std::int64_t>() < 0) {
      bad(join(path_, key), "expected a non-negative integer");
    }
    return v->get<std::uint64_t>();
  }

  double number(const std::string& key, double fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    return to_double(*v, join(path_, key));
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    return to_text(*v, join(path_, key));
  }

  std::string required_text(const std::string& key) {
    return to_text(require(key), join(path_, key));
  }

  std::vector<double> number_list(const std::string& key) {
    const json* v = find(key);
    std::vector<double> out;
    if (v == nullptr) return out;
    if (!v->is_array()) bad(join(path_, key), "expected an array of numbers");
    for (const json& item : *v) out.push_back(to_double(item, join(path_, key)));
    return out;
  }

  std::vector<int> integer_list(const std::string& key) {
    const json* v = find(key);
    std::vector<int> out;
    if (v == nullptr) return out;
    if (!v->is_array()) bad(join(path_, key), "expected an array of integers");
    for (const json& item : *v) out.push_back(to_int(item, join(path_, key)));
    return out;
  }

  const std::string& path() const { return path_; }

  void finish() {
    for (const auto& [key, value] : value_.items()) {
      if (seen_.find(key) == seen_.end()) {
        bad(join(path_, key), "unknown key");
      }
    }
  }

  static int to_int(const json& v, const std::string& path) {
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
      bad(path, "expected an integer");
    }
    return v.get<int>();
  }

  static double to_double(const json& v, const std::string& path) {
    if (!v.is_number()) bad(path, "expected a number");
    return v.get<double>();
  }

  static std::string to_text(const json& v, const std::string& path) {
    if (!v.is_string()) bad(path, "expected a string");
    return v.get<std::string>();
  }

 private:
  const json& value_;
  std::string path_;
  std::set<std::string> seen_;
};

std::vector<AspectSpec> parse_aspects(const json& value,
                                      const std::string& path) {
  if (!value.is_array() || value.empty()) {
    bad(path, "expected a nonempty array of aspects");
  }
  std::vector<AspectSpec> aspects;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string item_path = path + "[" + std::to_string(i) + "]";
    Section aspect(value[i], item_path);
    AspectSpec spec;
    spec.size = aspect.required_integer("size");
    if (spec.size < 1) bad(item_path + ".size", "must be >= 1");
    const std::string ordering = aspect.required_text("ordering");
    if (ordering == "ordered") {
      spec.ordering = AspectOrdering::ordered;
    } else if (ordering == "unordered") {
      spec.ordering = AspectOrdering::unordered;
    } else {
      bad(item_path + ".ordering", "expected 'ordered' or 'unordered'");
    }
    aspects.push_back(spec);
    aspect.finish();
  }
  return aspects;
}

DependencySpec parse_dependency(const json& value, const std::string& path) {
  Section section(value, path);
  DependencySpec spec;
  const std::string type = section.required_text("type");
  if (type == "temporal") {
    spec.type = DependencySpec::Type::temporal;
  } else if (type == "multiplex") {
    spec.type = DependencySpec::Type::multiplex;
  } else if (type == "temporal_multiplex") {
    spec.type = DependencySpec::Type::temporal_multiplex;
  } else if (type == "block_multiplex") {
    spec.type = DependencySpec::Type::block_multiplex;
  } else {
    bad(join(path, "type"),
        "expected 'temporal', 'multiplex', 'temporal_multiplex' or "
        "'block_multiplex'");
  }
  spec.p = section.number("p", 0.0);
  spec.p_per_transition = section.number_list("p_per_transition");
  spec.changepoints = section.integer_list("changepoints");
  spec.blocks = section.integer_list("blocks");
  spec.block_p = section.number_list("block_p");
  if (const json* table = section.find("coupling_table")) {
    if (!table->is_array()) {
      bad(join(path, "coupling_table"), "expected an array of arrays");
    }
    for (const json& row : *table) {
      if (!row.is_array()) {
        bad(join(path, "coupling_table"), "expected an array of arrays");
      }
      std::vector<double> values;
      for (const json& item : row) {
        values.push_back(Section::to_double(item, join(path, "coupling_table")));
      }
      spec.coupling_table.push_back(std::move(values));
    }
  }
  section.finish();
  return spec;
}

NullSpec parse_null(const json& value, const std::string& path) {
  Section section(value, path);
  NullSpec spec;
  spec.communities = section.integer("communities", 0);
  spec.theta = section.number("theta", 1.0);
  if (!(spec.theta > 0)) bad(join(path, "theta"), "must be > 0");
  spec.shared_probabilities = section.boolean("shared_probabilities", false);
  if (const json* support = section.find("support")) {
    const std::string support_path = join(path, "support");
    Section sub(*support, support_path);
    const std::string process = sub.required_text("process");
    if (process == "full") {
      spec.support = SupportProcessSpec::full();
    } else if (process == "temporal_birth_death") {
      const double death = sub.number("death_rate", 0.0);
      const double birth = sub.number("birth_rate", 0.0);
      const int initial = sub.integer("initial_size", 0);
      if (!(death >= 0 && death <= 1)) {
        bad(join(support_path, "death_rate"), "must lie in [0, 1]");
      }
      if (!(birth >= 0)) bad(join(support_path, "birth_rate"), "must be >= 0");
      if (initial < 1) bad(join(support_path, "initial_size"), "must be >= 1");
      spec.support =
          SupportProcessSpec::temporal_birth_death(death, birth, initial);
    } else if (process == "multiplex_presence") {
      const double q = sub.number("presence_probability", 1.0);
      if (!(q > 0 && q <= 1)) {
        bad(join(support_path, "presence_probability"),
            "must lie in (0, 1]");
      }
      spec.support = SupportProcessSpec::multiplex_presence(q);
    } else {
      bad(join(support_path, "process"),
          "expected 'full', 'temporal_birth_death' or 'multiplex_presence'");
    }
    sub.finish();
  }
  const bool birth_death =
      spec.support.variant == SupportProcessSpec::Variant::temporal_birth_death;
  if (!birth_death && spec.communities < 1) {
    bad(join(path, "communities"), "must be >= 1");
  }
  section.finish();
  return spec;
}

SamplerConfig parse_sampler(const json& value, const std::string& path) {
  Section section(value, path);
  SamplerConfig config;
  config.iterations = section.integer("iterations", 0);
  if (config.iterations < 0) bad(join(path, "iterations"), "must be >= 0");
  config.chains = section.integer("chains", 1);
  if (config.chains < 1) bad(join(path, "chains"), "must be >= 1");
  section.finish();
  return config;
}

EdgeSpec parse_edges(const json& value, const std::string& path) {
  Section section(value, path);
  EdgeSpec spec;
  spec.exponent = section.number("exponent", spec.exponent);
  if (!(spec.exponent < -1)) bad(join(path, "exponent"), "must be < -1");
  spec.k_min = section.number("k_min", spec.k_min);
  spec.k_max = section.number("k_max", spec.k_max);
  if (!(spec.k_min > 0) || !(spec.k_max >= spec.k_min)) {
    bad(join(path, "k_min"), "need 0 < k_min <= k_max");
  }
  spec.mu = section.number("mu", spec.mu);
  if (!(spec.mu >= 0 && spec.mu <= 1)) {
    bad(join(path, "mu"), "must lie in [0, 1]");
  }
  section.finish();
  return spec;
}

SweepGrid parse_sweep(const json& value, const std::string& path) {
  Section section(value, path);
  SweepGrid grid;
  grid.mu_values = section.number_list("mu");
  if (grid.mu_values.empty()) {
    bad(join(path, "mu"), "expected a nonempty array of mixing values");
  }
  for (const double mu : grid.mu_values) {
    if (!(mu >= 0 && mu <= 1)) bad(join(path, "mu"), "values must lie in [0, 1]");
  }
  grid.omega_values = section.number_list("omega");
  if (grid.omega_values.empty()) grid.omega_values = {1.0};
  for (const double omega : grid.omega_values) {
    if (!(omega >= 0)) bad(join(path, "omega"), "values must be >= 0");
  }
  if (const json* rules = section.find("rules")) {
    if (!rules->is_array()) bad(join(path, "rules"), "expected an array");
    for (const json& item : *rules) {
      const std::string name = Section::to_text(item, join(path, "rules"));
      if (name == "max_gain") {
        grid.rules.push_back(MoveRule::max_gain);
      } else if (name == "proportional_gain") {
        grid.rules.push_back(MoveRule::proportional_gain);
      } else {
        bad(join(path, "rules"),
            "expected 'max_gain' or 'proportional_gain'");
      }
    }
  }
  if (grid.rules.empty()) grid.rules = {MoveRule::max_gain};
  grid.runs = section.integer("runs", 10);
  if (grid.runs < 1) bad(join(path, "runs"), "must be >= 1");
  const std::string coupling = section.text("coupling", "ordinal");
  if (coupling == "ordinal") {
    grid.topology = CouplingTopology::ordinal;
  } else if (coupling == "categorical") {
    grid.topology = CouplingTopology::categorical;
  } else {
    bad(join(path, "coupling"), "expected 'ordinal' or 'categorical'");
  }
  section.finish();
  return grid;
}

json parse_document(const std::string& text) {
  json document = json::parse(text, nullptr, false);
  if (document.is_discarded()) {
    throw ValidationError("config: not valid JSON");
  }
  return document;
}

BenchmarkConfig parse_config_object(const json& document, bool allow_sweep,
                                    SweepGrid* grid) {
  Section top(document, "");
  BenchmarkConfig config;
  config.seed = top.unsigned64("seed", 0);
  {
    Section shape(top.require("shape"), "shape");
    config.nodes = shape.required_integer("nodes");
    if (config.nodes < 1) bad("shape.nodes", "must be >= 1");
    config.aspects = parse_aspects(shape.require("aspects"), "shape.aspects");
    shape.finish();
  }
  config.dependency = parse_dependency(top.require("dependency"), "dependency");
  config.null_model = parse_null(top.require("null"), "null");
  if (const json* sampler = top.find("sampler")) {
    config.sampler = parse_sampler(*sampler, "sampler");
  }
  if (const json* edges = top.find("edges")) {
    config.edges = parse_edges(*edges, "edges");
  }
  if (allow_sweep) {
    *grid = parse_sweep(top.require("sweep"), "sweep");
  } else if (const json* sweep = top.find("sweep")) {
    // A sweep config is a valid generate config; the grid is checked but
    // otherwise ignored.
    parse_sweep(*sweep, "sweep");
  }
  top.finish();
  return config;
}

json dependency_json(const DependencySpec& spec) {
  json out;
  switch (spec.type) {
    case DependencySpec::Type::temporal:
      out["type"] = "temporal";
      if (spec.p_per_transition.empty()) {
        out["p"] = spec.p;
      } else {
        out["p_per_transition"] = spec.p_per_transition;
      }
      if (!spec.changepoints.empty()) out["changepoints"] = spec.changepoints;
      break;
    case DependencySpec::Type::multiplex:
      out["type"] = "multiplex";
      out["p"] = spec.p;
      break;
    case DependencySpec::Type::temporal_multiplex:
      out["type"] = "temporal_multiplex";
      if (spec.coupling_table.empty()) {
        out["p"] = spec.p;
      } else {
        out["coupling_table"] = spec.coupling_table;
      }
      break;
    case DependencySpec::Type::block_multiplex:
      out["type"] = "block_multiplex";
      out["blocks"] = spec.blocks;
      if (spec.block_p.empty()) {
        out["p"] = spec.p;
      } else {
        out["block_p"] = spec.block_p;
      }
      break;
  }
  return out;
}

json null_json(const NullSpec& spec) {
  json support;
  switch (spec.support.variant) {
    case SupportProcessSpec::Variant::full:
      support["process"] = "full";
      break;
    case SupportProcessSpec::Variant::temporal_birth_death:
      support["process"] = "temporal_birth_death";
      support["death_rate"] = spec.support.death_rate;
      support["birth_rate"] = spec.support.birth_rate;
      support["initial_size"] = spec.support.initial_size;
      break;
    case SupportProcessSpec::Variant::multiplex_presence:
      support["process"] = "multiplex_presence";
      support["presence_probability"] = spec.support.presence_probability;
      break;
  }
  json out;
  out["communities"] = spec.communities;
  out["theta"] = spec.theta;
  out["shared_probabilities"] = spec.shared_probabilities;
  out["support"] = std::move(support);
  return out;
}

json config_json(const BenchmarkConfig& config) {
  json aspects = json::array();
  for (const AspectSpec& aspect : config.aspects) {
    json item;
    item["size"] = aspect.size;
    item["ordering"] =
        aspect.ordering == AspectOrdering::ordered ? "ordered" : "unordered";
    aspects.push_back(std::move(item));
  }
  json out;
  out["seed"] = config.seed;
  out["shape"]["nodes"] = config.nodes;
  out["shape"]["aspects"] = std::move(aspects);
  out["dependency"] = dependency_json(config.dependency);
  out["null"] = null_json(config.null_model);
  out["sampler"]["iterations"] = config.sampler.iterations;
  out["sampler"]["chains"] = config.sampler.chains;
  out["edges"]["exponent"] = config.edges.exponent;
  out["edges"]["k_min"] = config.edges.k_min;
  out["edges"]["k_max"] = config.edges.k_max;
  out["edges"]["mu"] = config.edges.mu;
  return out;
}

json sweep_json(const SweepGrid& grid) {
  json out;
  out["mu"] = grid.mu_values;
  out["omega"] = grid.omega_values;
  json rules = json::array();
  for (const MoveRule rule : grid.rules) rules.push_back(move_rule_name(rule));
  out["rules"] = std::move(rules);
  out["runs"] = grid.runs;
  out["coupling"] =
      grid.topology == CouplingTopology::ordinal ? "ordinal" : "categorical";
  return out;
}

}  // namespace

BenchmarkConfig parse_benchmark_config(const std::string& json_text) {
  return parse_config_object(parse_document(json_text), false, nullptr);
}

SweepConfig parse_sweep_config(const std::string& json_text) {
  SweepConfig out;
  out.base = parse_config_object(parse_document(json_text), true, &out.grid);
  return out;
}

std::string render_benchmark_config(const BenchmarkConfig& config) {
  return config_json(config).dump(2) + "\n";
}

std::string render_manifest(const BenchmarkConfig& config) {
  json out;
  out["tool"] = "multinet";
  out["version"] = version();
  out["seed"] = config.seed;
  out["config"] = config_json(config);
  return out.dump(2) + "\n";
}

std::string render_manifest(const BenchmarkConfig& config,
                            const SweepGrid& grid) {
  json out;
  out["tool"] = "multinet";
  out["version"] = version();
  out["seed"] = config.seed;
  out["config"] = config_json(config);
  out["sweep"] = sweep_json(grid);
  return out.dump(2) + "\n";
}

}  // namespace multinet

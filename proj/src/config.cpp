#include "srake/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace srake {

ConfigError::ConfigError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? message + " (line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ")"
                                  : message),
      line_(line),
      column_(column) {}

namespace {

[[noreturn]] void fail(const std::string& message, const YAML::Mark& mark) {
  if (mark.is_null()) throw ConfigError(message);
  throw ConfigError(message, mark.line + 1, mark.column + 1);
}

/// A mapping section whose keys are checked against a fixed vocabulary.
class Section {
 public:
  Section(const YAML::Node& node, std::string name, std::set<std::string> allowed)
      : node_(node), name_(std::move(name)) {
    if (!node_.IsMap()) fail("section '" + name_ + "' must be a mapping", node_.Mark());
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.contains(key)) fail("unknown key '" + name_ + "." + key + "'", kv.first.Mark());
    }
  }

  bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }
  YAML::Mark mark() const { return node_.Mark(); }
  YAML::Mark mark(const std::string& key) const { return has(key) ? node_[key].Mark() : node_.Mark(); }

  template <typename T>
  T get(const std::string& key) const {
    const YAML::Node v = node_[key];
    if (!v) fail("missing key '" + name_ + "." + key + "'", node_.Mark());
    return convert<T>(v, key);
  }

  template <typename T>
  T get_or(const std::string& key, T fallback) const {
    const YAML::Node v = node_[key];
    return v ? convert<T>(v, key) : fallback;
  }

  YAML::Node raw(const std::string& key) const { return node_[key]; }
  const std::string& name() const { return name_; }

 private:
  template <typename T>
  T convert(const YAML::Node& v, const std::string& key) const {
    try {
      return v.as<T>();
    } catch (const YAML::Exception&) {
      fail("bad value for '" + name_ + "." + key + "'", v.Mark());
    }
  }

  YAML::Node node_;
  std::string name_;
};

Section required_section(const YAML::Node& root, const std::string& name, std::set<std::string> allowed) {
  const YAML::Node n = root[name];
  if (!n) fail("missing section '" + name + "'", root.Mark());
  return Section(n, name, std::move(allowed));
}

template <typename Fn>
void checked(const YAML::Mark& mark, Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    fail(e.what(), mark);
  }
}

}  // namespace

ExperimentSpec parse_spec(const std::string& config_text) {
  YAML::Node root;
  try {
    root = YAML::Load(config_text);
  } catch (const YAML::ParserException& e) {
    fail(std::string("config syntax error: ") + e.msg, e.mark);
  }
  if (!root.IsMap()) throw ConfigError("config must be a mapping of sections");
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (key != "system" && key != "energy" && key != "sweep" && key != "ga" && key != "run") {
      fail("unknown section '" + key + "'", kv.first.Mark());
    }
  }

  ExperimentSpec spec;
  const Section sys = required_section(
      root, "system", {"users", "paths", "fingers", "chips_per_frame", "th_alphabet", "decay", "log_variance"});
  const Section energy = required_section(root, "energy", {"profile", "desired", "interferer_boost_db"});
  const Section sweep = required_section(root, "sweep", {"axis", "values", "ebn0_db"});
  const Section run = required_section(root, "run", {"algorithms", "realizations", "seed", "enumeration_cap", "averaging"});

  spec.base.num_users = sys.get<int>("users");
  spec.base.num_paths = sys.get<int>("paths");
  spec.base.chips_per_frame = sys.get<int>("chips_per_frame");
  spec.base.decay = sys.get<double>("decay");
  spec.base.log_variance = sys.get<double>("log_variance");
  const std::string th = sys.get_or<std::string>("th_alphabet", "auto");
  if (th == "auto") {
    spec.th_alphabet_auto = true;
    spec.base.th_alphabet = spec.base.chips_per_frame - spec.base.num_paths;
  } else {
    spec.th_alphabet_auto = false;
    spec.base.th_alphabet = sys.get<int>("th_alphabet");
  }

  const std::string axis = sweep.get<std::string>("axis");
  if (axis == "ebn0_db") {
    spec.axis = SweepAxis::ebn0_db;
  } else if (axis == "fingers") {
    spec.axis = SweepAxis::fingers;
  } else {
    fail("sweep.axis must be 'ebn0_db' or 'fingers'", sweep.mark("axis"));
  }
  spec.grid = sweep.get<std::vector<double>>("values");
  if (spec.grid.empty()) fail("sweep.values must not be empty", sweep.mark("values"));
  if (spec.axis == SweepAxis::ebn0_db) {
    if (!sys.has("fingers")) fail("missing key 'system.fingers' (required for an ebn0_db sweep)", sys.mark());
    if (sweep.has("ebn0_db")) fail("sweep.ebn0_db only applies to a fingers sweep", sweep.mark("ebn0_db"));
    spec.base.num_fingers = sys.get<int>("fingers");
  } else {
    if (sys.has("fingers")) fail("system.fingers is set by the sweep grid for a fingers sweep", sys.mark("fingers"));
    spec.ebn0_db = sweep.get<double>("ebn0_db");
    spec.base.num_fingers = static_cast<int>(spec.grid.front());
  }

  const std::string profile = energy.get_or<std::string>("profile", "equal");
  if (profile == "equal") {
    spec.profile = EnergyProfile::equal;
  } else if (profile == "near_far") {
    spec.profile = EnergyProfile::near_far;
  } else {
    fail("energy.profile must be 'equal' or 'near_far'", energy.mark("profile"));
  }
  const double desired = energy.get_or<double>("desired", 1.0);
  spec.interferer_boost_db = energy.get_or<double>("interferer_boost_db", 10.0);
  if (spec.profile == EnergyProfile::equal && energy.has("interferer_boost_db")) {
    fail("energy.interferer_boost_db only applies to the near_far profile", energy.mark("interferer_boost_db"));
  }
  spec.base.energies.assign(std::max(spec.base.num_users, 1), desired);

  for (const auto& name : run.get<std::vector<std::string>>("algorithms")) {
    const auto alg = parse_algorithm(name);
    if (!alg) fail("unknown algorithm '" + name + "'", run.mark("algorithms"));
    spec.algorithms.push_back(*alg);
  }
  spec.realizations = run.get_or<int>("realizations", 500);
  spec.seed = run.get_or<std::uint64_t>("seed", 1);
  spec.enumeration_cap = run.get_or<std::uint64_t>("enumeration_cap", kDefaultEnumerationCap);
  const std::string averaging = run.get_or<std::string>("averaging", "linear");
  if (averaging == "linear") {
    spec.averaging = Averaging::linear;
  } else if (averaging == "db") {
    spec.averaging = Averaging::db;
  } else {
    fail("run.averaging must be 'linear' or 'db'", run.mark("averaging"));
  }

  const bool with_ga = std::find(spec.algorithms.begin(), spec.algorithms.end(), Algorithm::ga) != spec.algorithms.end();
  if (root["ga"]) {
    const Section ga(root["ga"], "ga",
                     {"initial_population", "population", "parents", "mutations", "iterations", "inject_conventional"});
    spec.ga.n_ipop = ga.get<int>("initial_population");
    spec.ga.n_pop = ga.get<int>("population");
    spec.ga.n_good = ga.get<int>("parents");
    spec.ga.n_mut = ga.get<int>("mutations");
    spec.ga.n_iter = ga.get<int>("iterations");
    spec.ga.inject_conventional = ga.get_or<bool>("inject_conventional", true);
  } else if (with_ga) {
    fail("missing section 'ga' (the ga algorithm is requested)", root.Mark());
  }

  // Invariant checks, positioned at the section that owns the offending value.
  if (spec.realizations < 1) fail("run.realizations must be >= 1", run.mark("realizations"));
  for (std::size_t p = 0; p < spec.grid.size(); ++p) {
    if (spec.axis == SweepAxis::fingers && spec.grid[p] != std::round(spec.grid[p])) {
      fail("finger-count sweep values must be integers", sweep.mark("values"));
    }
    const SystemConfig cfg = spec.config_at(p);
    checked(sys.mark(), [&] { cfg.validate(); });
    if (with_ga) checked(root["ga"].Mark(), [&] { spec.ga.validate(cfg.num_paths, cfg.num_fingers); });
  }
  checked(run.mark(), [&] { spec.validate(); });
  return spec;
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_spec(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string to_config_text(const ExperimentSpec& spec) {
  YAML::Emitter out;
  out << YAML::BeginMap;

  out << YAML::Key << "system" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "users" << YAML::Value << spec.base.num_users;
  out << YAML::Key << "paths" << YAML::Value << spec.base.num_paths;
  if (spec.axis == SweepAxis::ebn0_db) out << YAML::Key << "fingers" << YAML::Value << spec.base.num_fingers;
  out << YAML::Key << "chips_per_frame" << YAML::Value << spec.base.chips_per_frame;
  if (spec.th_alphabet_auto) {
    out << YAML::Key << "th_alphabet" << YAML::Value << "auto";
  } else {
    out << YAML::Key << "th_alphabet" << YAML::Value << spec.base.th_alphabet;
  }
  out << YAML::Key << "decay" << YAML::Value << spec.base.decay;
  out << YAML::Key << "log_variance" << YAML::Value << spec.base.log_variance;
  out << YAML::EndMap;

  out << YAML::Key << "energy" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "profile" << YAML::Value << std::string(to_string(spec.profile));
  out << YAML::Key << "desired" << YAML::Value << (spec.base.energies.empty() ? 1.0 : spec.base.energies.front());
  if (spec.profile == EnergyProfile::near_far) {
    out << YAML::Key << "interferer_boost_db" << YAML::Value << spec.interferer_boost_db;
  }
  out << YAML::EndMap;

  out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "axis" << YAML::Value << std::string(to_string(spec.axis));
  out << YAML::Key << "values" << YAML::Value << YAML::Flow << spec.grid;
  if (spec.axis == SweepAxis::fingers) out << YAML::Key << "ebn0_db" << YAML::Value << spec.ebn0_db;
  out << YAML::EndMap;

  out << YAML::Key << "ga" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "initial_population" << YAML::Value << spec.ga.n_ipop;
  out << YAML::Key << "population" << YAML::Value << spec.ga.n_pop;
  out << YAML::Key << "parents" << YAML::Value << spec.ga.n_good;
  out << YAML::Key << "mutations" << YAML::Value << spec.ga.n_mut;
  out << YAML::Key << "iterations" << YAML::Value << spec.ga.n_iter;
  out << YAML::Key << "inject_conventional" << YAML::Value << spec.ga.inject_conventional;
  out << YAML::EndMap;

  out << YAML::Key << "run" << YAML::Value << YAML::BeginMap;
  std::vector<std::string> algs;
  for (Algorithm a : spec.algorithms) algs.emplace_back(to_string(a));
  out << YAML::Key << "algorithms" << YAML::Value << YAML::Flow << algs;
  out << YAML::Key << "realizations" << YAML::Value << spec.realizations;
  out << YAML::Key << "seed" << YAML::Value << spec.seed;
  out << YAML::Key << "enumeration_cap" << YAML::Value << spec.enumeration_cap;
  out << YAML::Key << "averaging" << YAML::Value << std::string(to_string(spec.averaging));
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace srake

#include "cmarl/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cmarl/errors.hpp"

namespace cmarl {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Icl: return "icl";
    case Algorithm::Idql: return "idql";
    case Algorithm::Joint: return "joint";
    case Algorithm::IclPredicted: return "icl-predicted";
  }
  return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "icl") return Algorithm::Icl;
  if (name == "idql") return Algorithm::Idql;
  if (name == "joint") return Algorithm::Joint;
  if (name == "icl-predicted") return Algorithm::IclPredicted;
  throw ConfigError("unknown algorithm '" + name +
                    "' (expected icl, idql, joint or icl-predicted)");
}

namespace {

constexpr long kUnset = -1;

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long parse_long(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    long out = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return out;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + key + ": '" + v + "'");
  }
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return out;
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": '" + v + "'");
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Tracks which episode-count fields were given explicitly so finalize()
// can fill task defaults.
struct ParseState {
  bool episodes_set = false;
  bool decay_set = false;
};

void set_key(ExperimentConfig& cfg, ParseState& st, const std::string& section,
             const std::string& key, const std::string& value) {
  const std::string where = section + "." + key;
  if (section == "env") {
    if (key == "task") cfg.env.task = task_from_name(value);
    else if (key == "grid_height") cfg.env.grid_height = static_cast<int>(parse_long(value, where));
    else if (key == "grid_width") cfg.env.grid_width = static_cast<int>(parse_long(value, where));
    else if (key == "n_agents") cfg.env.n_agents = static_cast<int>(parse_long(value, where));
    else if (key == "n_preys") cfg.env.n_preys = static_cast<int>(parse_long(value, where));
    else if (key == "capture_min_agents")
      cfg.env.capture_min_agents = static_cast<int>(parse_long(value, where));
    else if (key == "n_trees") cfg.env.n_trees = static_cast<int>(parse_long(value, where));
    else if (key == "tree_level_max")
      cfg.env.tree_level_max = static_cast<int>(parse_long(value, where));
    else if (key == "mask_radius") cfg.env.mask_radius = static_cast<int>(parse_long(value, where));
    else if (key == "max_steps") cfg.env.max_steps = static_cast<int>(parse_long(value, where));
    else throw ConfigError("unknown key '" + where + "'");
  } else if (section == "learner") {
    if (key == "algorithm") cfg.algorithm = algorithm_from_name(value);
    else if (key == "alpha") cfg.learner.alpha = parse_double(value, where);
    else if (key == "gamma") cfg.learner.gamma = parse_double(value, where);
    else if (key == "default_value") cfg.learner.default_value = parse_double(value, where);
    else if (key == "eps_start") cfg.learner.schedule.eps_start = parse_double(value, where);
    else if (key == "eps_end") cfg.learner.schedule.eps_end = parse_double(value, where);
    else if (key == "decay_episodes") {
      cfg.learner.schedule.decay_steps = parse_long(value, where);
      st.decay_set = true;
    } else if (key == "episodes") {
      cfg.learner.episodes = parse_long(value, where);
      st.episodes_set = true;
    } else if (key == "predicted_matrix") cfg.predicted_matrix_path = value;
    else throw ConfigError("unknown key '" + where + "'");
  } else if (section == "discovery") {
    if (key == "lag") cfg.discovery.lag = static_cast<int>(parse_long(value, where));
    else if (key == "lambda") cfg.discovery.lambda = parse_double(value, where);
    else if (key == "theta") cfg.discovery.threshold = parse_double(value, where);
    else if (key == "random_features")
      cfg.discovery.random_features = static_cast<int>(parse_long(value, where));
    else throw ConfigError("unknown key '" + where + "'");
  } else if (section == "run") {
    if (key == "seeds") {
      cfg.run.seeds.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        cfg.run.seeds.push_back(static_cast<std::uint64_t>(parse_long(item, where)));
      }
      if (cfg.run.seeds.empty()) throw ConfigError("run.seeds must list at least one seed");
    } else if (key == "out_dir") cfg.run.out_dir = value;
    else if (key == "trace_sample_rate")
      cfg.learner.trace_sample_rate = parse_double(value, where);
    else if (key == "trace_final_episodes")
      cfg.learner.trace_final_episodes = parse_long(value, where);
    else throw ConfigError("unknown key '" + where + "'");
  } else {
    throw ConfigError("unknown section '[" + section + "]'");
  }
}

}  // namespace

void ExperimentConfig::finalize() {
  if (learner.episodes == kUnset)
    learner.episodes = env.task == Task::PredatorPrey ? 20000 : 30000;
  if (learner.schedule.decay_steps == kUnset)
    learner.schedule.decay_steps = learner.episodes * 8 / 10;
}

void ExperimentConfig::validate() const {
  env.validate();
  if (!(learner.alpha > 0.0) || learner.alpha > 1.0)
    throw InvalidConfig("learner.alpha must lie in (0, 1]");
  if (learner.gamma < 0.0 || learner.gamma >= 1.0)
    throw InvalidConfig("learner.gamma must lie in [0, 1)");
  const auto& sch = learner.schedule;
  if (!(1.0 >= sch.eps_start && sch.eps_start >= sch.eps_end && sch.eps_end >= 0.0))
    throw InvalidConfig("exploration schedule must satisfy 1 >= eps_start >= eps_end >= 0");
  if (sch.decay_steps < 0) throw InvalidConfig("learner.decay_episodes must be >= 0");
  if (learner.episodes < 1) throw InvalidConfig("learner.episodes must be >= 1");
  if (learner.trace_sample_rate < 0.0 || learner.trace_sample_rate > 1.0)
    throw InvalidConfig("learner.trace_sample_rate must lie in [0, 1]");
  if (learner.trace_final_episodes < 0)
    throw InvalidConfig("learner.trace_final_episodes must be >= 0");
  if (algorithm == Algorithm::IclPredicted && predicted_matrix_path.empty())
    throw InvalidConfig("algorithm icl-predicted requires learner.predicted_matrix");
  if (discovery.lag < 1) throw InvalidConfig("discovery.lag must be >= 1");
  if (!(discovery.lambda > 0.0)) throw InvalidConfig("discovery.lambda must be > 0");
  if (!(discovery.threshold > 1.0)) throw InvalidConfig("discovery.theta must be > 1");
  if (discovery.random_features < 0)
    throw InvalidConfig("discovery.random_features must be >= 0");
  if (run.seeds.empty()) throw InvalidConfig("run.seeds must list at least one seed");
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& name) {
  ExperimentConfig cfg;
  cfg.learner.episodes = kUnset;
  cfg.learner.schedule.decay_steps = kUnset;

  ParseState st;
  bool seen_env = false, seen_learner = false, seen_run = false;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    std::size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(name + ":" + std::to_string(line_no) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section == "env") seen_env = true;
      else if (section == "learner") seen_learner = true;
      else if (section == "run") seen_run = true;
      else if (section != "discovery")
        throw ConfigError(name + ":" + std::to_string(line_no) + ": unknown section '[" +
                          section + "]'");
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(name + ":" + std::to_string(line_no) + ": expected key = value");
    if (section.empty())
      throw ConfigError(name + ":" + std::to_string(line_no) + ": key outside any section");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      set_key(cfg, st, section, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }

  if (!seen_env) throw ConfigError(name + ": missing required section [env]");
  if (!seen_learner) throw ConfigError(name + ": missing required section [learner]");
  if (!seen_run) throw ConfigError(name + ": missing required section [run]");
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  std::size_t eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like section.key=value: '" + assignment + "'");
  std::string path = trim(assignment.substr(0, eq));
  std::string value = trim(assignment.substr(eq + 1));
  std::size_t dot = path.find('.');
  if (dot == std::string::npos)
    throw ConfigError("override key must be section.key: '" + assignment + "'");
  ParseState st;
  set_key(cfg, st, path.substr(0, dot), path.substr(dot + 1), value);
}

std::string env_section_text(const EnvConfig& env) {
  std::ostringstream out;
  out << "[env]\n";
  out << "task = " << task_name(env.task) << "\n";
  out << "grid_height = " << env.grid_height << "\n";
  out << "grid_width = " << env.grid_width << "\n";
  out << "n_agents = " << env.n_agents << "\n";
  out << "n_preys = " << env.n_preys << "\n";
  out << "capture_min_agents = " << env.capture_min_agents << "\n";
  out << "n_trees = " << env.n_trees << "\n";
  out << "tree_level_max = " << env.tree_level_max << "\n";
  out << "mask_radius = " << env.mask_radius << "\n";
  out << "max_steps = " << env.max_steps << "\n";
  return out.str();
}

std::string experiment_section_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << env_section_text(cfg.env);
  out << "\n[learner]\n";
  out << "algorithm = " << algorithm_name(cfg.algorithm) << "\n";
  out << "alpha = " << fmt(cfg.learner.alpha) << "\n";
  out << "gamma = " << fmt(cfg.learner.gamma) << "\n";
  out << "default_value = " << fmt(cfg.learner.default_value) << "\n";
  out << "eps_start = " << fmt(cfg.learner.schedule.eps_start) << "\n";
  out << "eps_end = " << fmt(cfg.learner.schedule.eps_end) << "\n";
  out << "decay_episodes = " << cfg.learner.schedule.decay_steps << "\n";
  out << "episodes = " << cfg.learner.episodes << "\n";
  if (!cfg.predicted_matrix_path.empty())
    out << "predicted_matrix = " << cfg.predicted_matrix_path << "\n";
  out << "\n[discovery]\n";
  out << "lag = " << cfg.discovery.lag << "\n";
  out << "lambda = " << fmt(cfg.discovery.lambda) << "\n";
  out << "theta = " << fmt(cfg.discovery.threshold) << "\n";
  out << "random_features = " << cfg.discovery.random_features << "\n";
  out << "\n[run]\n";
  out << "trace_sample_rate = " << fmt(cfg.learner.trace_sample_rate) << "\n";
  out << "trace_final_episodes = " << cfg.learner.trace_final_episodes << "\n";
  return out.str();
}

std::string canonical_config_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << experiment_section_text(cfg);
  out << "seeds = ";
  for (std::size_t i = 0; i < cfg.run.seeds.size(); ++i) {
    if (i) out << ",";
    out << cfg.run.seeds[i];
  }
  out << "\n";
  out << "out_dir = " << cfg.run.out_dir << "\n";
  return out.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {
std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}
}  // namespace

std::string config_hash_hex(const ExperimentConfig& cfg) {
  return hex64(fnv1a64(experiment_section_text(cfg)));
}

std::string env_hash_hex(const EnvConfig& env) {
  return hex64(fnv1a64(env_section_text(env)));
}

}  // namespace cmarl

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmarl/env.hpp"
#include "cmarl/trainer.hpp"

namespace cmarl {

enum class Algorithm { Icl, Idql, Joint, IclPredicted };

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

struct DiscoveryConfig {
  int lag = 1;
  double lambda = 1.0;
  double threshold = 1.05;
  int random_features = 0;
};

struct RunConfig {
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::string out_dir = "runs/out";
};

// The single source of reproducibility: everything a run needs, parsed
// from a sectioned key = value file. Unset episode counts fall back to
// the task default (20000 predator_prey / 30000 lumberjacks) and an unset
// exploration decay covers the first 80% of episodes.
struct ExperimentConfig {
  EnvConfig env;
  Algorithm algorithm = Algorithm::Icl;
  LearnerConfig learner;
  std::string predicted_matrix_path;  // for algorithm = icl-predicted
  DiscoveryConfig discovery;
  RunConfig run;

  // Fills task-dependent defaults; call once after parsing/overrides.
  void finalize();
  // Throws InvalidConfig / ConfigError.
  void validate() const;
};

// Parses the sectioned format:
//   [env] / [learner] / [discovery] / [run]
// '#' and ';' start comments. Unknown sections or keys are errors; the
// env, learner and run sections are required ([discovery] is optional).
ExperimentConfig parse_config_text(const std::string& text, const std::string& name);
ExperimentConfig parse_config_file(const std::string& path);

// Applies "section.key=value" on top of a parsed config.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

// Canonical round-trippable serialization with fixed section and key
// order.
std::string canonical_config_text(const ExperimentConfig& cfg);

// The experiment-identity subset (env, learner, discovery and trace
// sampling, but not seeds or output locations); the byte input of
// config hashing, so equal experiments hash equally wherever they run.
std::string experiment_section_text(const ExperimentConfig& cfg);

std::uint64_t fnv1a64(const std::string& bytes);
std::string config_hash_hex(const ExperimentConfig& cfg);
std::string env_section_text(const EnvConfig& env);
std::string env_hash_hex(const EnvConfig& env);

}  // namespace cmarl

#pragma once

#include <cstdint>
#include <vector>

#include "cmarl/env.hpp"
#include "cmarl/metrics.hpp"
#include "cmarl/oracle.hpp"
#include "cmarl/qlearn.hpp"
#include "cmarl/trace.hpp"

namespace cmarl {

// Where the per-step causality factors come from during training.
//   Oracle     - ground-truth rule of the task (the masked learner)
//   AlwaysOne  - c == 1, plain independent Q-learning on the team reward
//   Predicted  - a fixed per-agent gate, e.g. the reward column of an
//                inferred causal matrix; applied on rewarded steps only
struct CreditSource {
  enum class Kind { Oracle, AlwaysOne, Predicted };
  Kind kind = Kind::AlwaysOne;
  std::vector<std::uint8_t> gate;

  static CreditSource oracle() { return {Kind::Oracle, {}}; }
  static CreditSource always_one() { return {Kind::AlwaysOne, {}}; }
  static CreditSource predicted(std::vector<std::uint8_t> g) {
    return {Kind::Predicted, std::move(g)};
  }
};

struct LearnerConfig {
  double alpha = 0.1;
  double gamma = 0.95;
  double default_value = 0.0;
  ExplorationSchedule schedule{1.0, 0.05, 1};  // decay_steps in episodes
  long episodes = 20000;
  double trace_sample_rate = 0.05;
  long trace_final_episodes = 200;
};

struct TrainResult {
  std::vector<QTable> tables;
  MetricsSeries metrics;
  std::vector<EpisodeTrace> traces;
};

// Independent tabular Q-learning over E episodes. Every agent applies the
// masked update with its own factor drawn from credit_source each step.
// Episodes are traced when the seeded sampler fires or when they fall in
// the final trace_final_episodes window; traced steps always carry the
// oracle credit vector.
TrainResult train_icl(const EnvConfig& env_cfg, const LearnerConfig& learner_cfg,
                      const CreditSource& credit_source, std::uint64_t seed);

struct JointTrainResult {
  JointQTable table;
  MetricsSeries metrics;
};

// Centralized reference: Q-learning on the joint observation/action space
// with the unmasked team reward. Throws IntractableJointSpace above 4
// agents.
JointTrainResult train_joint(const EnvConfig& env_cfg, const LearnerConfig& learner_cfg,
                             std::uint64_t seed);

// Substream ids for derive_seed; shared by training and evaluation so a
// run is fully determined by (config, seed).
inline constexpr std::uint64_t kStreamActions = 1;
inline constexpr std::uint64_t kStreamEnvEpisode = 2;
inline constexpr std::uint64_t kStreamTraceSample = 3;

}  // namespace cmarl

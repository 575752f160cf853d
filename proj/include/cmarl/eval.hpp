#pragma once

#include <cstdint>
#include <vector>

#include "cmarl/env.hpp"
#include "cmarl/qlearn.hpp"

namespace cmarl {

struct EvalReport {
  // Number of capture/chop events each agent is listed in.
  std::vector<long> participation;
  std::vector<double> episode_returns;
  double mean_team_reward = 0.0;
  // For the designated episode (the first one): per step, the sum over
  // agents of Manhattan distances to every other agent.
  std::vector<double> distance_series;
};

// Greedy rollouts (eps = 0) of the given per-agent tables.
EvalReport evaluate_policy(const std::vector<QTable>& tables, const EnvConfig& env_cfg,
                           long episodes, std::uint64_t seed);

// positions_per_step[t] holds all agent positions after step t.
std::vector<double> pairwise_distance_series(
    const std::vector<std::vector<GridPos>>& positions_per_step);

}  // namespace cmarl

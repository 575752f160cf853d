#include "cmarl/eval.hpp"

#include "cmarl/errors.hpp"
#include "cmarl/trainer.hpp"

namespace cmarl {

std::vector<double> pairwise_distance_series(
    const std::vector<std::vector<GridPos>>& positions_per_step) {
  std::vector<double> series;
  series.reserve(positions_per_step.size());
  for (const auto& positions : positions_per_step) {
    double sum = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i)
      for (std::size_t j = 0; j < positions.size(); ++j)
        if (i != j) sum += manhattan(positions[i], positions[j]);
    series.push_back(sum);
  }
  return series;
}

EvalReport evaluate_policy(const std::vector<QTable>& tables, const EnvConfig& env_cfg,
                           long episodes, std::uint64_t seed) {
  Environment env(env_cfg);
  const int n = env_cfg.n_agents;
  if (static_cast<int>(tables.size()) != n)
    throw LengthMismatch("expected one table per agent");

  EvalReport report;
  report.participation.assign(n, 0);

  std::vector<Action> actions(n);
  std::vector<std::vector<GridPos>> designated_positions;

  for (long e = 0; e < episodes; ++e) {
    auto [state, obs] = env.reset(derive_seed(seed, kStreamEnvEpisode, e));
    double episode_return = 0.0;
    while (!state.done) {
      for (int i = 0; i < n; ++i) actions[i] = greedy_action(tables[i], state_key(obs[i]));
      JointStepResult result = env.step(state, actions);
      for (const StepEvent& ev : result.events)
        for (int id : ev.agents) report.participation[id] += 1;
      if (e == 0) designated_positions.push_back(state.agents);
      episode_return += result.team_reward;
      obs = std::move(result.observations);
    }
    report.episode_returns.push_back(episode_return);
  }

  report.distance_series = pairwise_distance_series(designated_positions);
  if (!report.episode_returns.empty()) {
    double total = 0.0;
    for (double r : report.episode_returns) total += r;
    report.mean_team_reward = total / static_cast<double>(report.episode_returns.size());
  }
  return report;
}

}  // namespace cmarl

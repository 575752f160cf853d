#include "cmarl/trainer.hpp"

#include <iostream>

#include "cmarl/errors.hpp"

namespace cmarl {

namespace {

std::vector<std::uint8_t> credit_for_step(const CreditSource& source, Task task,
                                          const std::vector<Observation>& prev_obs,
                                          const JointStepResult& result) {
  switch (source.kind) {
    case CreditSource::Kind::Oracle:
      return oracle_credit(task, prev_obs, result).values;
    case CreditSource::Kind::AlwaysOne:
      return std::vector<std::uint8_t>(prev_obs.size(), 1);
    case CreditSource::Kind::Predicted:
      if (source.gate.size() != prev_obs.size())
        throw LengthMismatch("predicted credit gate does not match the agent count");
      if (result.team_reward > 0.0) return source.gate;
      return std::vector<std::uint8_t>(prev_obs.size(), 1);
  }
  return {};
}

}  // namespace

TrainResult train_icl(const EnvConfig& env_cfg, const LearnerConfig& learner_cfg,
                      const CreditSource& credit_source, std::uint64_t seed) {
  Environment env(env_cfg);
  const int n = env_cfg.n_agents;

  TrainResult out;
  out.tables.resize(n);
  for (QTable& t : out.tables) {
    t.alpha = learner_cfg.alpha;
    t.gamma = learner_cfg.gamma;
    t.default_value = learner_cfg.default_value;
  }

  Rng action_rng(derive_seed(seed, kStreamActions));
  Rng sample_rng(derive_seed(seed, kStreamTraceSample));

  std::vector<StateKey> keys(n), next_keys(n);
  std::vector<Action> actions(n);

  for (long e = 0; e < learner_cfg.episodes; ++e) {
    double eps = learner_cfg.schedule.eps_at(e);
    bool sampled = sample_rng.uniform_double() < learner_cfg.trace_sample_rate;
    bool traced =
        sampled || e >= learner_cfg.episodes - learner_cfg.trace_final_episodes;

    auto [state, obs] = env.reset(derive_seed(seed, kStreamEnvEpisode, e));
    for (int i = 0; i < n; ++i) keys[i] = state_key(obs[i]);

    EpisodeTrace trace;
    trace.episode = e;
    double episode_return = 0.0;
    int steps = 0;

    while (!state.done) {
      for (int i = 0; i < n; ++i)
        actions[i] = select_action(out.tables[i], keys[i], eps, action_rng);
      JointStepResult result = env.step(state, actions);

      std::vector<std::uint8_t> credit =
          credit_for_step(credit_source, env_cfg.task, obs, result);
      for (int i = 0; i < n; ++i) next_keys[i] = state_key(result.observations[i]);
      for (int i = 0; i < n; ++i)
        q_update(out.tables[i], keys[i], actions[i], credit[i], result.team_reward,
                 next_keys[i]);

      if (traced) {
        TraceStep st;
        st.step = steps;
        st.obs = obs;
        st.actions = actions;
        st.reward = result.team_reward;
        st.events = result.events;
        st.oracle_c = oracle_credit(env_cfg.task, obs, result).values;
        trace.steps.push_back(std::move(st));
      }

      episode_return += result.team_reward;
      ++steps;
      obs = std::move(result.observations);
      keys.swap(next_keys);
    }

    out.metrics.rows.push_back({e, episode_return, steps, eps});
    if (traced) out.traces.push_back(std::move(trace));
  }
  return out;
}

JointTrainResult train_joint(const EnvConfig& env_cfg, const LearnerConfig& learner_cfg,
                             std::uint64_t seed) {
  if (env_cfg.n_agents > 4)
    throw IntractableJointSpace("joint learner supports at most 4 agents (5^" +
                                std::to_string(env_cfg.n_agents) + " joint actions)");
  Environment env(env_cfg);
  const int n = env_cfg.n_agents;
  int n_joint = 1;
  for (int i = 0; i < n; ++i) n_joint *= kActionCount;
  if (n_joint >= 625)
    std::cerr << "note: joint learner with " << n_joint
              << " joint actions per state; expect a large table\n";

  JointTrainResult out;
  out.table.alpha = learner_cfg.alpha;
  out.table.gamma = learner_cfg.gamma;
  out.table.default_value = learner_cfg.default_value;
  out.table.n_agents = n;
  out.table.n_joint_actions = n_joint;

  Rng action_rng(derive_seed(seed, kStreamActions));

  auto joint_key = [&](const std::vector<Observation>& obs) {
    StateKey key;
    for (const Observation& o : obs) key += state_key(o);
    return key;
  };

  for (long e = 0; e < learner_cfg.episodes; ++e) {
    double eps = learner_cfg.schedule.eps_at(e);
    auto [state, obs] = env.reset(derive_seed(seed, kStreamEnvEpisode, e));
    StateKey key = joint_key(obs);

    double episode_return = 0.0;
    int steps = 0;

    while (!state.done) {
      int a;
      if (action_rng.uniform_double() < eps) {
        a = static_cast<int>(action_rng.uniform_int(static_cast<std::uint32_t>(n_joint)));
      } else {
        auto it = out.table.entries.find(key);
        if (it == out.table.entries.end()) {
          a = 0;
        } else {
          a = 0;
          for (int j = 1; j < n_joint; ++j)
            if (it->second[j] > it->second[a]) a = j;
        }
      }

      JointStepResult result = env.step(state, joint_action_decode(a, n));
      StateKey next_key = joint_key(result.observations);

      double best_next = out.table.max_value(next_key);
      auto& row = out.table.row(key);
      row[a] = (1.0 - out.table.alpha) * row[a] +
               out.table.alpha * (result.team_reward + out.table.gamma * best_next);

      episode_return += result.team_reward;
      ++steps;
      key = std::move(next_key);
    }

    out.metrics.rows.push_back({e, episode_return, steps, eps});
  }
  return out;
}

}  // namespace cmarl

#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "cmarl/grid.hpp"
#include "cmarl/rng.hpp"

namespace cmarl {

// Tabular action-value function over observation keys. Missing entries
// read default_value for every action.
struct QTable {
  double alpha = 0.1;
  double gamma = 0.95;
  double default_value = 0.0;
  std::unordered_map<StateKey, std::array<double, kActionCount>> entries;

  double value(const StateKey& s, Action a) const {
    auto it = entries.find(s);
    return it == entries.end() ? default_value : it->second[static_cast<int>(a)];
  }

  double max_value(const StateKey& s) const {
    auto it = entries.find(s);
    if (it == entries.end()) return default_value;
    double best = it->second[0];
    for (int a = 1; a < kActionCount; ++a)
      if (it->second[a] > best) best = it->second[a];
    return best;
  }

  std::array<double, kActionCount>& row(const StateKey& s) {
    auto it = entries.find(s);
    if (it == entries.end()) {
      std::array<double, kActionCount> fresh;
      fresh.fill(default_value);
      it = entries.emplace(s, fresh).first;
    }
    return it->second;
  }
};

// The masked update: Q(s,a) <- (1-alpha) Q(s,a) + alpha [c*r + gamma max_a' Q(s',a')].
// The causality factor c in {0,1} gates only the immediate reward; the
// bootstrap term is never masked.
void q_update(QTable& table, const StateKey& s, Action a, int c, double r,
              const StateKey& s_next);

// Greedy argmax with ties broken by lowest action index.
Action greedy_action(const QTable& table, const StateKey& s);

// With probability eps a uniform action, else greedy_action. Consumes one
// double from rng, plus one integer draw when exploring.
Action select_action(const QTable& table, const StateKey& s, double eps, Rng& rng);

struct ExplorationSchedule {
  double eps_start = 1.0;
  double eps_end = 0.05;
  long decay_steps = 1;  // schedule ticks over which to interpolate

  // Linear interpolation clamped at eps_end.
  double eps_at(long tick) const {
    if (decay_steps <= 0 || tick >= decay_steps) return eps_end;
    double f = static_cast<double>(tick) / static_cast<double>(decay_steps);
    return eps_start + (eps_end - eps_start) * f;
  }
};

// Centralized reference learner: one table over the concatenation of all
// agents' observation keys, acting with joint actions indexed in base 5
// (agent 0 is the least significant digit).
struct JointQTable {
  double alpha = 0.1;
  double gamma = 0.95;
  double default_value = 0.0;
  int n_agents = 1;
  int n_joint_actions = kActionCount;
  std::unordered_map<StateKey, std::vector<double>> entries;

  double max_value(const StateKey& s) const {
    auto it = entries.find(s);
    if (it == entries.end()) return default_value;
    double best = it->second[0];
    for (double v : it->second)
      if (v > best) best = v;
    return best;
  }

  std::vector<double>& row(const StateKey& s) {
    auto it = entries.find(s);
    if (it == entries.end())
      it = entries.emplace(s, std::vector<double>(n_joint_actions, default_value)).first;
    return it->second;
  }
};

int joint_action_index(const std::vector<Action>& actions);
std::vector<Action> joint_action_decode(int index, int n_agents);

}  // namespace cmarl

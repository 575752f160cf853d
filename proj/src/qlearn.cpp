#include "cmarl/qlearn.hpp"

namespace cmarl {

void q_update(QTable& table, const StateKey& s, Action a, int c, double r,
              const StateKey& s_next) {
  double best_next = table.max_value(s_next);
  auto& row = table.row(s);
  double& q = row[static_cast<int>(a)];
  q = (1.0 - table.alpha) * q + table.alpha * (c * r + table.gamma * best_next);
}

Action greedy_action(const QTable& table, const StateKey& s) {
  auto it = table.entries.find(s);
  if (it == table.entries.end()) return Action::Up;  // all-equal row, lowest index
  int best = 0;
  for (int a = 1; a < kActionCount; ++a)
    if (it->second[a] > it->second[best]) best = a;
  return static_cast<Action>(best);
}

Action select_action(const QTable& table, const StateKey& s, double eps, Rng& rng) {
  if (rng.uniform_double() < eps)
    return static_cast<Action>(rng.uniform_int(kActionCount));
  return greedy_action(table, s);
}

int joint_action_index(const std::vector<Action>& actions) {
  int idx = 0;
  for (std::size_t i = actions.size(); i-- > 0;)
    idx = idx * kActionCount + static_cast<int>(actions[i]);
  return idx;
}

std::vector<Action> joint_action_decode(int index, int n_agents) {
  std::vector<Action> actions(n_agents);
  for (int i = 0; i < n_agents; ++i) {
    actions[i] = static_cast<Action>(index % kActionCount);
    index /= kActionCount;
  }
  return actions;
}

}  // namespace cmarl

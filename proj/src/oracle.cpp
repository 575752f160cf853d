#include "cmarl/oracle.hpp"

#include "cmarl/errors.hpp"

namespace cmarl {

namespace {

void check_lengths(const std::vector<Observation>& prev_obs, const JointStepResult& result) {
  if (prev_obs.size() != result.observations.size())
    throw LengthMismatch("previous observations do not match the agent count of the step result");
}

}  // namespace

CausalVector oracle_predator_prey(const std::vector<Observation>& prev_obs,
                                  const JointStepResult& result) {
  check_lengths(prev_obs, result);
  CausalVector c;
  c.values.resize(prev_obs.size(), 1);
  if (result.team_reward > 0.0) {
    for (std::size_t i = 0; i < prev_obs.size(); ++i)
      c.values[i] = prev_obs[i].contains(CellContent::prey()) ? 1 : 0;
  }
  return c;
}

CausalVector oracle_lumberjacks(const std::vector<Observation>& prev_obs,
                                const JointStepResult& result) {
  check_lengths(prev_obs, result);
  CausalVector c;
  c.values.resize(prev_obs.size(), 1);
  if (result.team_reward > 0.0) {
    for (std::size_t i = 0; i < prev_obs.size(); ++i) {
      const Observation& obs = prev_obs[i];
      int min_level = obs.min_visible_tree_level();
      bool sees_tree = min_level > 0;
      int agents_seen = obs.count(CellContent::agent());  // includes self at center
      c.values[i] = (sees_tree && agents_seen >= min_level) ? 1 : 0;
    }
  }
  return c;
}

CausalVector oracle_credit(Task task, const std::vector<Observation>& prev_obs,
                           const JointStepResult& result) {
  return task == Task::PredatorPrey ? oracle_predator_prey(prev_obs, result)
                                    : oracle_lumberjacks(prev_obs, result);
}

}  // namespace cmarl

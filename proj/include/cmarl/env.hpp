#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cmarl/grid.hpp"
#include "cmarl/rng.hpp"

namespace cmarl {

enum class Task { PredatorPrey, Lumberjacks };

const char* task_name(Task t);
Task task_from_name(const std::string& name);

struct EnvConfig {
  Task task = Task::PredatorPrey;
  int grid_height = 7;
  int grid_width = 7;
  int n_agents = 4;
  // Predator-Prey: preys are captured when at least capture_min_agents
  // agents stand in their Moore neighborhood after movement.
  int n_preys = 2;
  int capture_min_agents = 2;
  // Lumberjacks: a level-l tree is chopped when at least l agents stand
  // in its Moore neighborhood after movement. Levels are sampled
  // uniformly from [1, tree_level_max] at reset.
  int n_trees = 6;
  int tree_level_max = 2;
  int mask_radius = 1;
  int max_steps = 100;

  int entity_count() const {
    return n_agents + (task == Task::PredatorPrey ? n_preys : n_trees);
  }
  // Throws InvalidConfig.
  void validate() const;
};

struct StepEvent {
  enum class Kind { Capture, Chop };
  Kind kind = Kind::Capture;
  GridPos pos;
  int tree_level = 0;      // 0 for captures
  std::vector<int> agents;  // participating agent ids, ascending
};

struct JointStepResult {
  std::vector<Observation> observations;
  double team_reward = 0.0;
  std::vector<StepEvent> events;
  bool done = false;
};

struct EnvState {
  std::vector<GridPos> agents;
  std::vector<GridPos> preys;
  std::vector<GridPos> trees;
  std::vector<int> tree_levels;
  int step = 0;
  bool done = false;
  Rng rng;  // prey movement stream

  int targets_remaining() const {
    return static_cast<int>(preys.size() + trees.size());
  }
};

// Deterministic, seedable gridworld. The instance itself is immutable
// after construction; all mutable state lives in EnvState, so separate
// instances (or separate states) can be driven from separate threads.
class Environment {
 public:
  explicit Environment(const EnvConfig& cfg);

  const EnvConfig& config() const { return cfg_; }

  // Places all entities on distinct uniformly sampled cells.
  std::pair<EnvState, std::vector<Observation>> reset(std::uint64_t seed) const;

  // Simultaneous agent movement (blocked moves resolve to Stay, lower
  // agent index wins contested cells), then prey movement, then
  // capture/chop resolution. Throws SteppedAfterDone.
  JointStepResult step(EnvState& state, const std::vector<Action>& actions) const;

  Observation observe(const EnvState& state, int agent) const;
  std::vector<Observation> observe_all(const EnvState& state) const;

 private:
  EnvConfig cfg_;
};

}  // namespace cmarl

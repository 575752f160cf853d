#pragma once

#include <cstdint>
#include <vector>

#include "cmarl/env.hpp"
#include "cmarl/grid.hpp"

namespace cmarl {

// Per-agent binary causality factors for one timestep.
struct CausalVector {
  std::vector<std::uint8_t> values;
  int timestep = 0;

  bool all_ones() const {
    for (std::uint8_t v : values)
      if (v == 0) return false;
    return true;
  }
  friend bool operator==(const CausalVector&, const CausalVector&) = default;
};

// Ground-truth credit for Predator-Prey. On a rewarded step an agent is
// credited iff its observation from the moment before the step contained
// at least one prey. On zero-reward steps every factor is 1: the factor
// multiplies the reward, so masking a zero is vacuous and this keeps the
// masked update identical to the unmasked one on rewardless steps.
CausalVector oracle_predator_prey(const std::vector<Observation>& prev_obs,
                                  const JointStepResult& result);

// Ground-truth credit for Lumberjacks. On a rewarded step an agent is
// credited iff (1) a tree was visible in its previous observation and
// (2) the number of agents it saw, itself included (the mask center is
// always Agent), reaches the lowest level among the trees it saw.
CausalVector oracle_lumberjacks(const std::vector<Observation>& prev_obs,
                                const JointStepResult& result);

CausalVector oracle_credit(Task task, const std::vector<Observation>& prev_obs,
                           const JointStepResult& result);

}  // namespace cmarl

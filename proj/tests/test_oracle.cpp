#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmarl/errors.hpp"
#include "cmarl/oracle.hpp"
#include "cmarl/qlearn.hpp"
#include "cmarl/rng.hpp"

using namespace cmarl;

namespace {

// 3x3 observation with the given non-center contents; center is Agent.
Observation make_obs(std::vector<std::uint8_t> mask) {
  Observation o;
  o.center = {3, 3};
  o.mask_radius = 1;
  o.mask = std::move(mask);
  o.mask[4] = CellContent::agent().code();
  return o;
}

Observation empty_obs() {
  return make_obs({1, 1, 1, 1, 2, 1, 1, 1, 1});
}

Observation obs_with(CellContent c, int cell = 0) {
  Observation o = empty_obs();
  o.mask[cell] = c.code();
  return o;
}

JointStepResult result_with_reward(double reward, std::size_t n_agents) {
  JointStepResult r;
  r.team_reward = reward;
  r.observations.resize(n_agents);
  return r;
}

}  // namespace

TEST_CASE("predator-prey: only agents that saw a prey are credited") {
  std::vector<Observation> prev = {obs_with(CellContent::prey()), empty_obs(), empty_obs(),
                                   empty_obs()};
  CausalVector c = oracle_predator_prey(prev, result_with_reward(1.0, 4));
  CHECK(c.values == std::vector<std::uint8_t>{1, 0, 0, 0});
}

TEST_CASE("predator-prey: zero reward means all ones") {
  std::vector<Observation> prev = {empty_obs(), empty_obs(), empty_obs(),
                                   obs_with(CellContent::prey())};
  CausalVector c = oracle_predator_prey(prev, result_with_reward(0.0, 4));
  CHECK(c.values == std::vector<std::uint8_t>{1, 1, 1, 1});
}

TEST_CASE("predator-prey: every watcher is credited") {
  std::vector<Observation> prev(4, obs_with(CellContent::prey(), 7));
  CausalVector c = oracle_predator_prey(prev, result_with_reward(1.0, 4));
  CHECK(c.values == std::vector<std::uint8_t>{1, 1, 1, 1});
}

TEST_CASE("lumberjacks: enough visible agents for the visible tree") {
  // A level-2 tree and one other agent: count including self = 2 >= 2.
  Observation o = empty_obs();
  o.mask[0] = CellContent::tree(2).code();
  o.mask[1] = CellContent::agent().code();
  CausalVector c = oracle_lumberjacks({o}, result_with_reward(1.0, 1));
  CHECK(c.values == std::vector<std::uint8_t>{1});
}

TEST_CASE("lumberjacks: too few visible agents fails condition 2") {
  // A level-3 tree and no other agents: count including self = 1 < 3.
  Observation o = empty_obs();
  o.mask[0] = CellContent::tree(3).code();
  CausalVector c = oracle_lumberjacks({o}, result_with_reward(1.0, 1));
  CHECK(c.values == std::vector<std::uint8_t>{0});
}

TEST_CASE("lumberjacks: no visible tree fails condition 1") {
  // Plenty of visible agents but no tree.
  Observation o = empty_obs();
  o.mask[0] = CellContent::agent().code();
  o.mask[1] = CellContent::agent().code();
  o.mask[2] = CellContent::agent().code();
  CausalVector c = oracle_lumberjacks({o}, result_with_reward(1.0, 1));
  CHECK(c.values == std::vector<std::uint8_t>{0});
}

TEST_CASE("lumberjacks: the easiest visible tree sets the bar") {
  // Levels 1 and 3 visible, one agent: 1 >= min(1, 3).
  Observation o = empty_obs();
  o.mask[0] = CellContent::tree(3).code();
  o.mask[8] = CellContent::tree(1).code();
  CausalVector c = oracle_lumberjacks({o}, result_with_reward(1.0, 1));
  CHECK(c.values == std::vector<std::uint8_t>{1});
}

TEST_CASE("lumberjacks: zero reward means all ones") {
  Observation o = empty_obs();
  CausalVector c = oracle_lumberjacks({o, o, o}, result_with_reward(0.0, 3));
  CHECK(c.values == std::vector<std::uint8_t>{1, 1, 1});
}

TEST_CASE("length mismatches are rejected") {
  std::vector<Observation> prev = {empty_obs(), empty_obs()};
  CHECK_THROWS_AS(oracle_predator_prey(prev, result_with_reward(1.0, 4)), LengthMismatch);
  CHECK_THROWS_AS(oracle_lumberjacks(prev, result_with_reward(1.0, 3)), LengthMismatch);
}

TEST_CASE("adding signal never revokes credit") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    // Random masks over {OutOfBounds, Empty, Agent, Prey}.
    Observation o = empty_obs();
    for (int cell = 0; cell < 9; ++cell)
      if (cell != 4) o.mask[cell] = static_cast<std::uint8_t>(rng.uniform_int(4));

    int free_cell = rng.uniform_int(9);
    if (free_cell == 4) free_cell = 0;

    // Predator-Prey: injecting a prey keeps c_i at 1.
    {
      CausalVector before = oracle_predator_prey({o}, result_with_reward(1.0, 1));
      Observation with_prey = o;
      with_prey.mask[free_cell] = CellContent::prey().code();
      CausalVector after = oracle_predator_prey({with_prey}, result_with_reward(1.0, 1));
      if (before.values[0] == 1) CHECK(after.values[0] == 1);
    }
    // Lumberjacks: injecting a tree whose level is already met keeps c_i
    // at 1. The tree goes into a non-agent cell so no contributor is
    // displaced.
    {
      Observation lj = o;
      for (int cell = 0; cell < 9; ++cell)
        if (lj.mask[cell] == CellContent::prey().code())
          lj.mask[cell] = CellContent::tree(1 + rng.uniform_int(3)).code();
      int slot = -1;
      for (int cell = 0; cell < 9; ++cell)
        if (lj.mask[cell] == CellContent::empty().code() ||
            lj.mask[cell] == CellContent::out_of_bounds().code()) {
          slot = cell;
          break;
        }
      if (slot >= 0) {
        CausalVector before = oracle_lumberjacks({lj}, result_with_reward(1.0, 1));
        Observation with_tree = lj;
        int agents_seen = lj.count(CellContent::agent());
        int level = 1 + static_cast<int>(rng.uniform_int(
                            static_cast<std::uint32_t>(std::max(1, agents_seen))));
        with_tree.mask[slot] = CellContent::tree(level).code();
        CausalVector after = oracle_lumberjacks({with_tree}, result_with_reward(1.0, 1));
        if (before.values[0] == 1) CHECK(after.values[0] == 1);
      }
    }
  }
}

TEST_CASE("credit is local to the agent's own observation") {
  Observation mine = obs_with(CellContent::prey());
  Observation other_a = empty_obs();
  Observation other_b = obs_with(CellContent::prey(), 8);

  CausalVector c1 = oracle_predator_prey({mine, other_a}, result_with_reward(1.0, 2));
  CausalVector c2 = oracle_predator_prey({mine, other_b}, result_with_reward(1.0, 2));
  CHECK(c1.values[0] == c2.values[0]);
}

TEST_CASE("masking a zero reward cannot change the update") {
  // c * 0 == 0 either way, so the oracle's all-ones convention on
  // rewardless steps leaves the learner exactly where plain independent
  // learning would be.
  QTable masked, unmasked;
  StateKey s = "s", s_next = "t";
  masked.row(s)[0] = 0.7;
  unmasked.row(s)[0] = 0.7;
  masked.row(s_next)[2] = 0.4;
  unmasked.row(s_next)[2] = 0.4;

  q_update(masked, s, Action::Up, 0, 0.0, s_next);
  q_update(unmasked, s, Action::Up, 1, 0.0, s_next);
  CHECK(masked.value(s, Action::Up) == unmasked.value(s, Action::Up));
}

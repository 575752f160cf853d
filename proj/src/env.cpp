#include "cmarl/env.hpp"

#include <algorithm>

#include "cmarl/errors.hpp"

namespace cmarl {

const char* task_name(Task t) {
  return t == Task::PredatorPrey ? "predator_prey" : "lumberjacks";
}

Task task_from_name(const std::string& name) {
  if (name == "predator_prey") return Task::PredatorPrey;
  if (name == "lumberjacks") return Task::Lumberjacks;
  throw InvalidConfig("unknown task '" + name + "' (expected predator_prey or lumberjacks)");
}

void EnvConfig::validate() const {
  if (grid_height < 3 || grid_width < 3)
    throw InvalidConfig("grid must be at least 3x3");
  if (grid_height > 255 || grid_width > 255)
    throw InvalidConfig("grid dimensions above 255 are not supported");
  if (n_agents < 1) throw InvalidConfig("at least 1 agent required");
  if (task == Task::PredatorPrey) {
    if (n_preys < 1) throw InvalidConfig("predator_prey needs at least 1 prey");
    if (capture_min_agents < 1) throw InvalidConfig("capture_min_agents must be >= 1");
  } else {
    if (n_trees < 1) throw InvalidConfig("lumberjacks needs at least 1 tree");
    if (tree_level_max < 1 || tree_level_max > n_agents)
      throw InvalidConfig("tree_level_max must lie in [1, n_agents]");
  }
  if (entity_count() > grid_height * grid_width)
    throw InvalidConfig("entities cannot occupy distinct cells on this grid");
  if (mask_radius < 1) throw InvalidConfig("mask_radius must be >= 1");
  if (mask_radius >= grid_height || mask_radius >= grid_width)
    throw InvalidConfig("mask_radius must be smaller than both grid dimensions");
  if (max_steps < 1) throw InvalidConfig("max_steps must be >= 1");
}

Environment::Environment(const EnvConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

namespace {

// Flat grid of cell codes used both for movement blocking and masks.
struct GridIndex {
  int h, w;
  std::vector<std::uint8_t> cells;

  GridIndex(int height, int width)
      : h(height), w(width), cells(static_cast<std::size_t>(height) * width,
                                   CellContent::empty().code()) {}

  bool in_bounds(GridPos p) const {
    return p.row >= 0 && p.row < h && p.col >= 0 && p.col < w;
  }
  std::uint8_t& at(GridPos p) { return cells[static_cast<std::size_t>(p.row) * w + p.col]; }
  std::uint8_t get(GridPos p) const {
    return cells[static_cast<std::size_t>(p.row) * w + p.col];
  }
  bool occupied(GridPos p) const { return get(p) != CellContent::empty().code(); }
};

GridIndex build_index(const EnvConfig& cfg, const EnvState& s) {
  GridIndex g(cfg.grid_height, cfg.grid_width);
  for (const GridPos& p : s.agents) g.at(p) = CellContent::agent().code();
  for (const GridPos& p : s.preys) g.at(p) = CellContent::prey().code();
  for (std::size_t i = 0; i < s.trees.size(); ++i)
    g.at(s.trees[i]) = CellContent::tree(s.tree_levels[i]).code();
  return g;
}

Observation make_observation(const GridIndex& g, GridPos center, int k) {
  Observation obs;
  obs.center = center;
  obs.mask_radius = k;
  obs.mask.resize(static_cast<std::size_t>(2 * k + 1) * (2 * k + 1));
  std::size_t idx = 0;
  for (int dr = -k; dr <= k; ++dr) {
    for (int dc = -k; dc <= k; ++dc, ++idx) {
      GridPos p{center.row + dr, center.col + dc};
      obs.mask[idx] = g.in_bounds(p) ? g.get(p) : CellContent::out_of_bounds().code();
    }
  }
  return obs;
}

}  // namespace

std::pair<EnvState, std::vector<Observation>> Environment::reset(std::uint64_t seed) const {
  EnvState s;
  s.rng = Rng(seed);

  // Sample distinct cells without replacement, agents first, then targets.
  std::vector<GridPos> free_cells;
  free_cells.reserve(static_cast<std::size_t>(cfg_.grid_height) * cfg_.grid_width);
  for (int r = 0; r < cfg_.grid_height; ++r)
    for (int c = 0; c < cfg_.grid_width; ++c) free_cells.push_back({r, c});

  auto draw_cell = [&]() {
    std::uint32_t i = s.rng.uniform_int(static_cast<std::uint32_t>(free_cells.size()));
    GridPos p = free_cells[i];
    free_cells[i] = free_cells.back();
    free_cells.pop_back();
    return p;
  };

  for (int i = 0; i < cfg_.n_agents; ++i) s.agents.push_back(draw_cell());
  if (cfg_.task == Task::PredatorPrey) {
    for (int i = 0; i < cfg_.n_preys; ++i) s.preys.push_back(draw_cell());
  } else {
    for (int i = 0; i < cfg_.n_trees; ++i) s.trees.push_back(draw_cell());
    for (int i = 0; i < cfg_.n_trees; ++i)
      s.tree_levels.push_back(
          1 + static_cast<int>(s.rng.uniform_int(static_cast<std::uint32_t>(cfg_.tree_level_max))));
  }
  s.step = 0;
  s.done = false;
  return {s, observe_all(s)};
}

Observation Environment::observe(const EnvState& state, int agent) const {
  GridIndex g = build_index(cfg_, state);
  return make_observation(g, state.agents[agent], cfg_.mask_radius);
}

std::vector<Observation> Environment::observe_all(const EnvState& state) const {
  GridIndex g = build_index(cfg_, state);
  std::vector<Observation> out;
  out.reserve(state.agents.size());
  for (const GridPos& p : state.agents)
    out.push_back(make_observation(g, p, cfg_.mask_radius));
  return out;
}

JointStepResult Environment::step(EnvState& state, const std::vector<Action>& actions) const {
  if (state.done) throw SteppedAfterDone("step() called on a finished episode");
  if (static_cast<int>(actions.size()) != cfg_.n_agents)
    throw LengthMismatch("expected one action per agent");

  GridIndex g = build_index(cfg_, state);

  // Agents move in index order; a move into a wall or into a cell that is
  // still occupied (by a not-yet-moved agent, an already-moved one, a prey
  // or a tree) resolves to Stay. Lower index wins contested cells.
  for (int i = 0; i < cfg_.n_agents; ++i) {
    if (actions[i] == Action::Stay) continue;
    GridPos target = apply_action(state.agents[i], actions[i]);
    if (!g.in_bounds(target) || g.occupied(target)) continue;
    g.at(state.agents[i]) = CellContent::empty().code();
    g.at(target) = CellContent::agent().code();
    state.agents[i] = target;
  }

  // Preys take a uniform-random legal move (Stay is always legal).
  for (GridPos& prey : state.preys) {
    std::vector<GridPos> legal;
    legal.reserve(kActionCount);
    for (int a = 0; a < kActionCount; ++a) {
      GridPos target = apply_action(prey, static_cast<Action>(a));
      if (target == prey || (g.in_bounds(target) && !g.occupied(target)))
        legal.push_back(target);
    }
    GridPos chosen = legal[state.rng.uniform_int(static_cast<std::uint32_t>(legal.size()))];
    if (!(chosen == prey)) {
      g.at(prey) = CellContent::empty().code();
      g.at(chosen) = CellContent::prey().code();
      prey = chosen;
    }
  }

  JointStepResult result;

  auto neighborhood_agents = [&](GridPos p) {
    std::vector<int> ids;
    for (int i = 0; i < cfg_.n_agents; ++i)
      if (moore_adjacent(state.agents[i], p)) ids.push_back(i);
    return ids;
  };

  if (cfg_.task == Task::PredatorPrey) {
    std::vector<GridPos> kept;
    for (const GridPos& prey : state.preys) {
      std::vector<int> ids = neighborhood_agents(prey);
      if (static_cast<int>(ids.size()) >= cfg_.capture_min_agents) {
        result.events.push_back({StepEvent::Kind::Capture, prey, 0, std::move(ids)});
        g.at(prey) = CellContent::empty().code();
      } else {
        kept.push_back(prey);
      }
    }
    state.preys = std::move(kept);
  } else {
    std::vector<GridPos> kept;
    std::vector<int> kept_levels;
    for (std::size_t t = 0; t < state.trees.size(); ++t) {
      std::vector<int> ids = neighborhood_agents(state.trees[t]);
      if (static_cast<int>(ids.size()) >= state.tree_levels[t]) {
        result.events.push_back(
            {StepEvent::Kind::Chop, state.trees[t], state.tree_levels[t], std::move(ids)});
        g.at(state.trees[t]) = CellContent::empty().code();
      } else {
        kept.push_back(state.trees[t]);
        kept_levels.push_back(state.tree_levels[t]);
      }
    }
    state.trees = std::move(kept);
    state.tree_levels = std::move(kept_levels);
  }

  result.team_reward = static_cast<double>(result.events.size());
  state.step += 1;
  state.done = state.targets_remaining() == 0 || state.step >= cfg_.max_steps;
  result.done = state.done;

  result.observations.reserve(cfg_.n_agents);
  for (const GridPos& p : state.agents)
    result.observations.push_back(make_observation(g, p, cfg_.mask_radius));
  return result;
}

}  // namespace cmarl

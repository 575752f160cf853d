#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmarl/env.hpp"
#include "cmarl/grid.hpp"
#include "cmarl/oracle.hpp"

namespace cmarl {

inline constexpr int kTraceSchemaVersion = 1;

// One recorded environment transition. obs holds the observations issued
// before the step (the inputs to action selection); reward and events are
// what the step produced; oracle_c is the ground-truth credit for exactly
// this (obs, reward) pair and is present on every step.
struct TraceStep {
  int step = 0;
  std::vector<Observation> obs;
  std::vector<Action> actions;
  double reward = 0.0;
  std::vector<StepEvent> events;
  std::vector<std::uint8_t> oracle_c;
};

struct EpisodeTrace {
  long episode = 0;
  std::vector<TraceStep> steps;
};

struct TraceMeta {
  Task task = Task::PredatorPrey;
  int n_agents = 0;
  int mask_radius = 1;
  int tree_level_max = 0;  // 0 for predator_prey
  std::string config_hash;

  friend bool operator==(const TraceMeta&, const TraceMeta&) = default;
};

struct TraceFile {
  TraceMeta meta;
  std::vector<EpisodeTrace> episodes;
};

// JSONL, one object per line. The first line is the file header
//   {"v":1,"kind":"meta","task":...,"n_agents":...,"mask_radius":...,
//    "tree_level_max":...,"config_hash":...}
// and every following line is one step
//   {"v":1,"kind":"step","episode":E,"step":T,
//    "obs":[{"center":[row,col],"mask":[codes...]},...],
//    "actions":[...],"reward":R,
//    "events":[{"kind":"capture"|"chop","pos":[row,col],"level":L,"agents":[...]}],
//    "oracle_c":[...]}
// Readers reject unknown versions and report malformed lines as
// "<file>:<line>".
void write_traces_jsonl(const std::string& path, const TraceMeta& meta,
                        const std::vector<EpisodeTrace>& episodes);

TraceFile read_traces_jsonl(const std::string& path);

// Reads every *.jsonl file in the directory in filename order.
std::vector<TraceFile> read_traces_dir(const std::string& dir);

}  // namespace cmarl

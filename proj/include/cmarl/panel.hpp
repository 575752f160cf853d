#pragma once

#include <vector>

#include "cmarl/trace.hpp"

namespace cmarl {

// Aligned per-episode series for causal analysis.
//
// Line t of an episode pairs the observations issued immediately before
// step t with the reward that step produced, so the observation on a line
// temporally precedes the reward on the same line. A predictor with lag L
// therefore maps the features of lines t-L+1..t to the reward of line t:
// at lag 1 it reads exactly the observation from the moment before the
// reward, matching the oracle's timing. Lagged rows never cross episode
// boundaries.
struct SeriesPanel {
  int n_agents = 0;
  int feature_dim = 0;  // per agent
  struct Episode {
    // steps x (n_agents * feature_dim), row-major.
    std::vector<double> features;
    std::vector<double> rewards;
    int steps = 0;

    const double* row(int t) const { return features.data() + static_cast<std::size_t>(t) * width; }
    int width = 0;
  };
  std::vector<Episode> episodes;
};

// Feature dimension of the canonical one-hot observation encoding: one
// indicator per mask cell and content category. Categories are the cell
// codes 0..3 (OutOfBounds, Empty, Agent, Prey) plus one per tree level up
// to tree_level_max.
int observation_feature_dim(int mask_radius, int tree_level_max);

// Writes the one-hot indicators of obs into dst (length feature_dim).
void encode_observation(const Observation& obs, int tree_level_max, double* dst);

// Builds one panel from a set of trace files. All files must agree on
// task shape (agent count, mask radius, tree levels); throws
// InconsistentTraces otherwise or when the set is empty.
SeriesPanel encode_traces(const std::vector<TraceFile>& traces);

}  // namespace cmarl

#include "cmarl/panel.hpp"

#include "cmarl/errors.hpp"

namespace cmarl {

int observation_feature_dim(int mask_radius, int tree_level_max) {
  int side = 2 * mask_radius + 1;
  int categories = 4 + tree_level_max;
  return side * side * categories;
}

void encode_observation(const Observation& obs, int tree_level_max, double* dst) {
  int categories = 4 + tree_level_max;
  for (std::size_t cell = 0; cell < obs.mask.size(); ++cell) {
    int code = obs.mask[cell];
    if (code >= categories)
      throw InconsistentTraces("observation cell code " + std::to_string(code) +
                               " exceeds the declared category count");
    dst[cell * categories + code] = 1.0;
  }
}

SeriesPanel encode_traces(const std::vector<TraceFile>& traces) {
  if (traces.empty()) throw InconsistentTraces("no trace files to encode");

  const TraceMeta& meta = traces.front().meta;
  for (const TraceFile& f : traces) {
    if (f.meta.task != meta.task || f.meta.n_agents != meta.n_agents ||
        f.meta.mask_radius != meta.mask_radius ||
        f.meta.tree_level_max != meta.tree_level_max)
      throw InconsistentTraces("trace files disagree on task shape");
  }
  if (meta.n_agents <= 0) throw InconsistentTraces("trace meta has no agents");

  SeriesPanel panel;
  panel.n_agents = meta.n_agents;
  panel.feature_dim = observation_feature_dim(meta.mask_radius, meta.tree_level_max);
  const int width = panel.n_agents * panel.feature_dim;
  const std::size_t mask_len =
      static_cast<std::size_t>(2 * meta.mask_radius + 1) * (2 * meta.mask_radius + 1);

  for (const TraceFile& f : traces) {
    for (const EpisodeTrace& ep : f.episodes) {
      SeriesPanel::Episode pe;
      pe.steps = static_cast<int>(ep.steps.size());
      pe.width = width;
      pe.features.assign(static_cast<std::size_t>(pe.steps) * width, 0.0);
      pe.rewards.reserve(pe.steps);
      for (int t = 0; t < pe.steps; ++t) {
        const TraceStep& st = ep.steps[t];
        if (static_cast<int>(st.obs.size()) != panel.n_agents)
          throw InconsistentTraces("step has wrong observation count");
        double* row = pe.features.data() + static_cast<std::size_t>(t) * width;
        for (int i = 0; i < panel.n_agents; ++i) {
          if (st.obs[i].mask.size() != mask_len)
            throw InconsistentTraces("step has wrong mask size");
          encode_observation(st.obs[i], meta.tree_level_max,
                             row + static_cast<std::size_t>(i) * panel.feature_dim);
        }
        pe.rewards.push_back(st.reward);
      }
      panel.episodes.push_back(std::move(pe));
    }
  }
  return panel;
}

}  // namespace cmarl

#pragma once

#include <string>
#include <vector>

namespace cmarl {

inline constexpr int kMetricsSchemaVersion = 1;

struct EpisodeMetrics {
  long episode = 0;
  double team_return = 0.0;
  int steps = 0;
  double epsilon = 0.0;
};

struct MetricsSeries {
  std::vector<EpisodeMetrics> rows;

  std::vector<double> returns() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const EpisodeMetrics& r : rows) out.push_back(r.team_return);
    return out;
  }
};

// CSV with a version header line:
//   # cmarl-metrics v1
//   episode,return,steps,epsilon
void write_metrics_csv(const std::string& path, const MetricsSeries& series);
MetricsSeries read_metrics_csv(const std::string& path);

}  // namespace cmarl

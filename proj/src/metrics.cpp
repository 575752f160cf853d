#include "cmarl/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cmarl/errors.hpp"

namespace cmarl {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_metrics_csv(const std::string& path, const MetricsSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open metrics file for writing: " + path);
  out << "# cmarl-metrics v" << kMetricsSchemaVersion << "\n";
  out << "episode,return,steps,epsilon\n";
  for (const EpisodeMetrics& r : series.rows) {
    out << r.episode << ',' << format_double(r.team_return) << ',' << r.steps << ','
        << format_double(r.epsilon) << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

MetricsSeries read_metrics_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open metrics file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty metrics file");
  std::string expected = "# cmarl-metrics v" + std::to_string(kMetricsSchemaVersion);
  if (line != expected)
    throw SchemaVersionMismatch(path + ": unsupported metrics header '" + line + "'");
  if (!std::getline(in, line) || line != "episode,return,steps,epsilon")
    throw SchemaVersionMismatch(path + ": unexpected metrics column header");

  MetricsSeries series;
  long line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    EpisodeMetrics row;
    char c1, c2, c3;
    if (!(ss >> row.episode >> c1 >> row.team_return >> c2 >> row.steps >> c3 >>
          row.epsilon) ||
        c1 != ',' || c2 != ',' || c3 != ',')
      throw DataError(path + ":" + std::to_string(line_no) + ": malformed metrics row");
    series.rows.push_back(row);
  }
  return series;
}

}  // namespace cmarl

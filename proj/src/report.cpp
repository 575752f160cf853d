#include "cmarl/report.hpp"

#include <algorithm>
#include <cmath>

namespace cmarl {

std::vector<double> moving_average(const std::vector<double>& xs, int window) {
  if (xs.empty()) return {};
  int n = static_cast<int>(xs.size());
  int w = std::max(1, std::min(window, n));
  std::vector<double> out;
  out.reserve(n - w + 1);
  double sum = 0.0;
  for (int i = 0; i < w; ++i) sum += xs[i];
  out.push_back(sum / w);
  for (int i = w; i < n; ++i) {
    sum += xs[i] - xs[i - w];
    out.push_back(sum / w);
  }
  return out;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  if (q <= 0.0) return values.front();
  if (q >= 1.0) return values.back();
  double pos = q * static_cast<double>(values.size() - 1);
  std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
  double frac = pos - static_cast<double>(lo);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

BandSeries median_band(const std::vector<std::vector<double>>& rows) {
  BandSeries band;
  if (rows.empty()) return band;
  std::size_t len = rows.front().size();
  for (const auto& r : rows) len = std::min(len, r.size());

  band.xs.reserve(len);
  band.median.reserve(len);
  band.q25.reserve(len);
  band.q75.reserve(len);
  std::vector<double> col(rows.size());
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t r = 0; r < rows.size(); ++r) col[r] = rows[r][i];
    band.xs.push_back(static_cast<double>(i));
    band.median.push_back(quantile(col, 0.5));
    band.q25.push_back(quantile(col, 0.25));
    band.q75.push_back(quantile(col, 0.75));
  }
  return band;
}

}  // namespace cmarl

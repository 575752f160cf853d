#pragma once

#include <vector>

namespace cmarl {

// Trailing-free sliding mean: output[i] = mean(x[i..i+w-1]), so the result
// has length n - w + 1. Windows longer than the series are clamped to it.
std::vector<double> moving_average(const std::vector<double>& xs, int window);

// Interpolated quantile of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> values, double q);

struct BandSeries {
  std::vector<double> xs;
  std::vector<double> median;
  std::vector<double> q25;
  std::vector<double> q75;
};

// Per-index median and interquartile range across several equally indexed
// series; rows are truncated to the shortest one.
BandSeries median_band(const std::vector<std::vector<double>>& rows);

}  // namespace cmarl

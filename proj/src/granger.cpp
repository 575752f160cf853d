#include "cmarl/granger.hpp"

#include <cmath>
#include <string>

#include "cmarl/errors.hpp"
#include "cmarl/rng.hpp"

namespace cmarl {

namespace {

// Cholesky solve of A w = b for symmetric positive definite A (n x n,
// row-major). A and b are consumed.
std::vector<double> solve_spd(std::vector<double> a, std::vector<double> b, int n) {
  // A = L L^T, in place (lower triangle).
  for (int j = 0; j < n; ++j) {
    double d = a[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) {
      double ljk = a[static_cast<std::size_t>(j) * n + k];
      d -= ljk * ljk;
    }
    if (d <= 0.0) d = 1e-12;  // numerical floor; A is PD by construction
    double ljj = std::sqrt(d);
    a[static_cast<std::size_t>(j) * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        s -= a[static_cast<std::size_t>(i) * n + k] * a[static_cast<std::size_t>(j) * n + k];
      a[static_cast<std::size_t>(i) * n + j] = s / ljj;
    }
  }
  // Forward: L y = b.
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= a[static_cast<std::size_t>(i) * n + k] * b[k];
    b[i] = s / a[static_cast<std::size_t>(i) * n + i];
  }
  // Backward: L^T w = y.
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < n; ++k) s -= a[static_cast<std::size_t>(k) * n + i] * b[k];
    b[i] = s / a[static_cast<std::size_t>(i) * n + i];
  }
  return b;
}

struct LagRows {
  // Per row: sorted nonzero column indices (binary features) or a dense
  // vector when random features are active, plus the target.
  std::vector<std::vector<int>> sparse;
  std::vector<std::vector<double>> dense;
  std::vector<double> targets;
  int dim = 0;  // without bias
  bool is_dense() const { return !dense.empty(); }
  std::size_t count() const { return targets.size(); }
};

// Assembles the lagged design rows for the included agents. Episodes
// shorter than the lag contribute nothing. include[i] selects agent i.
LagRows build_rows(const SeriesPanel& panel, const std::vector<bool>& include, int lag) {
  int n_included = 0;
  for (bool b : include) n_included += b ? 1 : 0;

  LagRows rows;
  rows.dim = n_included * panel.feature_dim * lag;

  for (const SeriesPanel::Episode& ep : panel.episodes) {
    if (ep.steps < lag) continue;
    for (int t = lag - 1; t < ep.steps; ++t) {
      std::vector<int> nz;
      int block = 0;
      for (int i = 0; i < panel.n_agents; ++i) {
        if (!include[i]) continue;
        for (int l = 0; l < lag; ++l) {
          const double* src = ep.row(t - l) + static_cast<std::size_t>(i) * panel.feature_dim;
          int offset = (block * lag + l) * panel.feature_dim;
          for (int f = 0; f < panel.feature_dim; ++f)
            if (src[f] != 0.0) nz.push_back(offset + f);
        }
        ++block;
      }
      rows.sparse.push_back(std::move(nz));
      rows.targets.push_back(ep.rewards[t]);
    }
  }
  return rows;
}

// Seeded per-agent ReLU expansion of the lagged blocks; keeps masking an
// agent equivalent to dropping its expanded block.
LagRows expand_random_features(const SeriesPanel& panel, const LagRows& raw,
                               const std::vector<bool>& include, int lag,
                               int random_features, std::uint64_t seed) {
  int block_dim = panel.feature_dim * lag;
  std::vector<int> included_ids;
  for (int i = 0; i < panel.n_agents; ++i)
    if (include[i]) included_ids.push_back(i);
  int n_included = static_cast<int>(included_ids.size());

  // One weight matrix per agent, tied to the agent id so the full and
  // masked fits share the surviving blocks.
  std::vector<std::vector<double>> weights(panel.n_agents);
  std::vector<std::vector<double>> biases(panel.n_agents);
  for (int i : included_ids) {
    Rng rng(derive_seed(seed, 100 + static_cast<std::uint64_t>(i)));
    weights[i].resize(static_cast<std::size_t>(random_features) * block_dim);
    biases[i].resize(random_features);
    double scale = 1.0 / std::sqrt(static_cast<double>(block_dim));
    for (double& w : weights[i]) w = rng.normal() * scale;
    for (double& b : biases[i]) b = rng.normal();
  }

  LagRows rows;
  rows.dim = n_included * random_features;
  rows.targets = raw.targets;
  rows.dense.reserve(raw.count());

  for (const std::vector<int>& nz : raw.sparse) {
    std::vector<double> z(rows.dim, 0.0);
    for (int b = 0; b < n_included; ++b) {
      int agent = included_ids[b];
      const auto& w = weights[agent];
      const auto& bias = biases[agent];
      int lo = b * block_dim, hi = (b + 1) * block_dim;
      for (int r = 0; r < random_features; ++r) {
        double acc = bias[r];
        for (int col : nz) {
          if (col >= lo && col < hi)
            acc += w[static_cast<std::size_t>(r) * block_dim + (col - lo)];
        }
        z[static_cast<std::size_t>(b) * random_features + r] = acc > 0.0 ? acc : 0.0;
      }
    }
    rows.dense.push_back(std::move(z));
  }
  return rows;
}

// Ridge fit minimizing mean squared error plus lambda * ||w||^2 (bias
// unpenalized); returns the in-sample mean squared error. Normalizing the
// normal equations by the row count keeps the fit invariant under
// duplicating the data.
double ridge_mse(const LagRows& rows, double lambda) {
  const int d = rows.dim + 1;  // + bias
  const double n = static_cast<double>(rows.count());

  std::vector<double> a(static_cast<std::size_t>(d) * d, 0.0);
  std::vector<double> b(d, 0.0);

  if (rows.is_dense()) {
    for (std::size_t r = 0; r < rows.count(); ++r) {
      const std::vector<double>& x = rows.dense[r];
      double y = rows.targets[r];
      for (int i = 0; i < rows.dim; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = i; j < rows.dim; ++j)
          a[static_cast<std::size_t>(i) * d + j] += x[i] * x[j];
        a[static_cast<std::size_t>(i) * d + rows.dim] += x[i];  // bias column
        b[i] += x[i] * y;
      }
      a[static_cast<std::size_t>(rows.dim) * d + rows.dim] += 1.0;
      b[rows.dim] += y;
    }
  } else {
    // Binary features: the Gram matrix is a co-occurrence count, exact in
    // integer arithmetic.
    for (std::size_t r = 0; r < rows.count(); ++r) {
      const std::vector<int>& nz = rows.sparse[r];
      double y = rows.targets[r];
      for (std::size_t p = 0; p < nz.size(); ++p) {
        for (std::size_t q = p; q < nz.size(); ++q)
          a[static_cast<std::size_t>(nz[p]) * d + nz[q]] += 1.0;
        a[static_cast<std::size_t>(nz[p]) * d + rows.dim] += 1.0;
        b[nz[p]] += y;
      }
      a[static_cast<std::size_t>(rows.dim) * d + rows.dim] += 1.0;
      b[rows.dim] += y;
    }
  }

  // Normalize, mirror to the lower triangle, add the penalty.
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      double v = a[static_cast<std::size_t>(i) * d + j] / n;
      a[static_cast<std::size_t>(i) * d + j] = v;
      a[static_cast<std::size_t>(j) * d + i] = v;
    }
    b[i] /= n;
  }
  for (int i = 0; i < rows.dim; ++i) a[static_cast<std::size_t>(i) * d + i] += lambda;

  std::vector<double> w = solve_spd(std::move(a), std::move(b), d);

  double sse = 0.0;
  for (std::size_t r = 0; r < rows.count(); ++r) {
    double pred = w[rows.dim];
    if (rows.is_dense()) {
      const std::vector<double>& x = rows.dense[r];
      for (int i = 0; i < rows.dim; ++i) pred += w[i] * x[i];
    } else {
      for (int col : rows.sparse[r]) pred += w[col];
    }
    double err = rows.targets[r] - pred;
    sse += err * err;
  }
  return sse / n;
}

double fit_error(const SeriesPanel& panel, const std::vector<bool>& include, int lag,
                 double lambda, std::uint64_t seed, int random_features) {
  LagRows rows = build_rows(panel, include, lag);
  if (rows.count() == 0)
    throw DataError("no usable rows: every episode is shorter than the lag");

  bool constant = true;
  for (double y : rows.targets)
    if (y != rows.targets.front()) {
      constant = false;
      break;
    }
  if (constant)
    throw DegenerateTarget("reward series is constant over the usable rows; "
                           "collect traces with rewarded steps");

  if (random_features > 0)
    rows = expand_random_features(panel, rows, include, lag, random_features, seed);
  return ridge_mse(rows, lambda);
}

void validate_score_args(const SeriesPanel& panel, int lag, double lambda) {
  if (panel.n_agents <= 0) throw InconsistentTraces("panel has no agents");
  if (lag < 1) throw InvalidConfig("lag must be >= 1");
  if (!(lambda > 0.0)) throw InvalidConfig("lambda must be > 0");
}

double score_from_errors(double masked, double full) {
  if (full <= 0.0) return masked <= 0.0 ? 1.0 : 1e18;
  return masked / full;
}

}  // namespace

double granger_score(const SeriesPanel& panel, int agent, int lag, double lambda,
                     std::uint64_t seed, int random_features) {
  validate_score_args(panel, lag, lambda);
  if (agent < 0 || agent >= panel.n_agents)
    throw LengthMismatch("agent index out of range");

  std::vector<bool> all(panel.n_agents, true);
  std::vector<bool> masked(panel.n_agents, true);
  masked[agent] = false;

  double full = fit_error(panel, all, lag, lambda, seed, random_features);
  double without = fit_error(panel, masked, lag, lambda, seed, random_features);
  return score_from_errors(without, full);
}

CausalMatrix infer_causal_matrix(const SeriesPanel& panel, int lag, double lambda,
                                 double threshold, std::uint64_t seed,
                                 int random_features) {
  validate_score_args(panel, lag, lambda);
  if (!(threshold > 1.0)) throw InvalidConfig("threshold must be > 1");

  CausalMatrix m;
  m.n_agents = panel.n_agents;
  m.edges.assign(static_cast<std::size_t>(m.size()) * m.size(), 0);
  m.scores.assign(static_cast<std::size_t>(m.size()) * m.size(), 0.0);

  std::vector<bool> all(panel.n_agents, true);
  double full = fit_error(panel, all, lag, lambda, seed, random_features);

  for (int i = 0; i < panel.n_agents; ++i) {
    std::vector<bool> masked = all;
    masked[i] = false;
    double without = fit_error(panel, masked, lag, lambda, seed, random_features);
    double score = score_from_errors(without, full);
    std::size_t idx = static_cast<std::size_t>(i) * m.size() + m.reward_node();
    m.scores[idx] = score;
    m.edges[idx] = score >= threshold ? 1 : 0;
  }
  return m;
}

CausalVector predicted_credit(const CausalMatrix& matrix,
                              const std::vector<Observation>& prev_obs,
                              const JointStepResult& result, int timestep) {
  if (static_cast<int>(prev_obs.size()) != matrix.n_agents)
    throw LengthMismatch("causal matrix does not match the agent count");
  CausalVector c;
  c.timestep = timestep;
  if (result.team_reward > 0.0)
    c.values = matrix.reward_gates();
  else
    c.values.assign(prev_obs.size(), 1);
  return c;
}

DiscoveryReport score_against_oracle(const std::vector<CausalVector>& predicted,
                                     const std::vector<CausalVector>& truth,
                                     const std::vector<double>& rewards) {
  if (predicted.size() != truth.size() || predicted.size() != rewards.size())
    throw LengthMismatch("predicted, truth and reward series must align step for step");

  DiscoveryReport report;
  for (std::size_t t = 0; t < rewards.size(); ++t) {
    if (!(rewards[t] > 0.0)) continue;
    if (predicted[t].values.size() != truth[t].values.size())
      throw LengthMismatch("credit vectors disagree on agent count at step " +
                           std::to_string(t));
    report.n_agents = static_cast<int>(truth[t].values.size());
    report.positive_reward_steps += 1;
    for (std::size_t i = 0; i < truth[t].values.size(); ++i) {
      bool p = predicted[t].values[i] != 0;
      bool g = truth[t].values[i] != 0;
      if (p && g) report.tp += 1;
      else if (!p && !g) report.tn += 1;
      else if (p && !g) report.fp += 1;
      else report.fn += 1;
    }
  }
  if (report.positive_reward_steps == 0)
    throw NoPositiveRewardSteps("no positive-reward steps to score against");

  double total = static_cast<double>(report.total());
  report.accuracy = static_cast<double>(report.tp + report.tn) / total;
  report.fp_rate = static_cast<double>(report.fp) / total;
  report.fn_rate = static_cast<double>(report.fn) / total;
  long errors = report.fp + report.fn;
  report.fp_share_of_errors =
      errors > 0 ? static_cast<double>(report.fp) / static_cast<double>(errors) : 0.0;
  return report;
}

}  // namespace cmarl

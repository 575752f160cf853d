#pragma once

#include <cstdint>
#include <vector>

#include "cmarl/oracle.hpp"
#include "cmarl/panel.hpp"

namespace cmarl {

// (N+1)x(N+1) adjacency over the N observation series plus the reward
// node (row/column N). Only observation->reward edges are inferred here;
// every other entry stays 0. scores holds the pre-threshold evidence for
// the same entries.
struct CausalMatrix {
  int n_agents = 0;
  std::vector<std::uint8_t> edges;
  std::vector<double> scores;

  int size() const { return n_agents + 1; }
  int reward_node() const { return n_agents; }
  std::uint8_t edge(int i, int j) const { return edges[static_cast<std::size_t>(i) * size() + j]; }
  double score(int i, int j) const { return scores[static_cast<std::size_t>(i) * size() + j]; }

  // The inferred per-agent gates: column of edges into the reward node.
  std::vector<std::uint8_t> reward_gates() const {
    std::vector<std::uint8_t> g(n_agents);
    for (int i = 0; i < n_agents; ++i) g[i] = edge(i, reward_node());
    return g;
  }
};

// Evidence that agent i's observation series Granger-causes the reward:
// the ratio of the mean squared next-reward prediction error of a ridge
// predictor fit without agent i's lagged features to the error of the
// predictor fit on all agents. Values substantially above 1 mean that
// masking the agent hurts prediction. random_features > 0 replaces each
// agent's lagged block by that many seeded ReLU random features before
// fitting (off by default; the seed is unused otherwise).
//
// Throws DegenerateTarget when the reward series is constant over the
// usable rows, and DataError when no episode is long enough for the lag.
double granger_score(const SeriesPanel& panel, int agent, int lag, double lambda,
                     std::uint64_t seed, int random_features = 0);

// Scores every agent and thresholds: edge (i, reward) = 1 iff
// granger_score(i) >= threshold. Requires threshold > 1.
CausalMatrix infer_causal_matrix(const SeriesPanel& panel, int lag, double lambda,
                                 double threshold, std::uint64_t seed,
                                 int random_features = 0);

// Applies the inferred gates as credit: on rewarded steps c_i is the
// matrix entry (i, reward); on zero-reward steps every factor is 1.
CausalVector predicted_credit(const CausalMatrix& matrix,
                              const std::vector<Observation>& prev_obs,
                              const JointStepResult& result, int timestep = 0);

struct DiscoveryReport {
  int n_agents = 0;
  long positive_reward_steps = 0;
  long tp = 0, tn = 0, fp = 0, fn = 0;
  double accuracy = 0.0;
  double fp_rate = 0.0;            // FP / all scored pairs
  double fn_rate = 0.0;            // FN / all scored pairs
  double fp_share_of_errors = 0.0; // FP / (FP + FN), 0 when error-free

  long total() const { return tp + tn + fp + fn; }
};

// Confusion of predicted vs ground-truth credit over every
// (agent, positive-reward step) pair; zero-reward steps carry no
// information and are excluded. rewards aligns the step series. Throws
// NoPositiveRewardSteps when nothing is scorable.
DiscoveryReport score_against_oracle(const std::vector<CausalVector>& predicted,
                                     const std::vector<CausalVector>& truth,
                                     const std::vector<double>& rewards);

}  // namespace cmarl

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cmarl/errors.hpp"
#include "cmarl/granger.hpp"
#include "cmarl/panel.hpp"
#include "cmarl/rng.hpp"
#include "cmarl/trainer.hpp"

using namespace cmarl;

namespace {

// Synthetic traces with a known causal graph: the reward of a step is a
// noisy indicator of cell 0 of each cause agent's mask, while every other
// agent's observation is independent noise.
TraceFile synthetic_traces(int n_agents, const std::vector<int>& causes, int episodes,
                           int steps, std::uint64_t seed, double flip_noise = 0.05) {
  TraceFile file;
  file.meta.task = Task::PredatorPrey;
  file.meta.n_agents = n_agents;
  file.meta.mask_radius = 1;
  file.meta.tree_level_max = 0;
  file.meta.config_hash = "synthetic";

  Rng rng(seed);
  for (int e = 0; e < episodes; ++e) {
    EpisodeTrace ep;
    ep.episode = e;
    for (int t = 0; t < steps; ++t) {
      TraceStep st;
      st.step = t;
      bool caused = false;
      for (int i = 0; i < n_agents; ++i) {
        Observation o;
        o.center = {static_cast<int>(rng.uniform_int(7)),
                    static_cast<int>(rng.uniform_int(7))};
        o.mask_radius = 1;
        o.mask.resize(9, CellContent::empty().code());
        o.mask[4] = CellContent::agent().code();
        for (int cell = 0; cell < 9; ++cell) {
          if (cell == 4) continue;
          double u = rng.uniform_double();
          if (u < 0.3)
            o.mask[cell] = CellContent::prey().code();
          else if (u < 0.4)
            o.mask[cell] = CellContent::agent().code();
        }
        for (int cause : causes)
          if (i == cause && o.mask[0] == CellContent::prey().code()) caused = true;
        st.obs.push_back(std::move(o));
        st.actions.push_back(Action::Stay);
      }
      double reward = caused ? 1.0 : 0.0;
      if (rng.uniform_double() < flip_noise) reward = 1.0 - reward;
      st.reward = reward;
      st.oracle_c.assign(n_agents, 1);
      ep.steps.push_back(std::move(st));
    }
    file.episodes.push_back(std::move(ep));
  }
  return file;
}

}  // namespace

TEST_CASE("feature dimension follows the documented encoding") {
  CHECK(observation_feature_dim(1, 2) == 54);  // 9 cells x 6 categories
  CHECK(observation_feature_dim(1, 0) == 36);
  CHECK(observation_feature_dim(2, 0) == 100);
}

TEST_CASE("encoding rejects empty or inconsistent trace sets") {
  CHECK_THROWS_AS(encode_traces({}), InconsistentTraces);

  TraceFile a = synthetic_traces(2, {0}, 2, 5, 1);
  TraceFile b = synthetic_traces(3, {0}, 2, 5, 2);
  CHECK_THROWS_AS(encode_traces({a, b}), InconsistentTraces);

  TraceFile c = synthetic_traces(2, {0}, 2, 5, 3);
  c.meta.mask_radius = 2;  // mask bytes no longer match the declared radius
  CHECK_THROWS_AS(encode_traces({c}), InconsistentTraces);
}

TEST_CASE("identical episodes encode to identical panel segments") {
  TraceFile file = synthetic_traces(2, {0}, 1, 8, 17);
  file.episodes.push_back(file.episodes.front());
  file.episodes.back().episode = 1;

  SeriesPanel panel = encode_traces({file});
  REQUIRE(panel.episodes.size() == 2);
  CHECK(panel.episodes[0].features == panel.episodes[1].features);
  CHECK(panel.episodes[0].rewards == panel.episodes[1].rewards);
  CHECK(panel.feature_dim == 36);
}

TEST_CASE("the causal agent scores above the noise agent") {
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    TraceFile file = synthetic_traces(2, {0}, 60, 20, 1000 + seed);
    SeriesPanel panel = encode_traces({file});
    double cause = granger_score(panel, 0, 1, 1.0, seed);
    double noise = granger_score(panel, 1, 1, 1.0, seed);
    if (cause > noise) ++wins;
  }
  CHECK(wins == 20);
}

TEST_CASE("a constant reward series is rejected") {
  TraceFile file = synthetic_traces(2, {0}, 3, 10, 5, 0.0);
  for (EpisodeTrace& ep : file.episodes)
    for (TraceStep& st : ep.steps) st.reward = 0.0;
  SeriesPanel panel = encode_traces({file});
  CHECK_THROWS_AS(granger_score(panel, 0, 1, 1.0, 1), DegenerateTarget);
}

TEST_CASE("episodes shorter than the lag cannot be used") {
  TraceFile file = synthetic_traces(2, {0}, 3, 4, 5);
  SeriesPanel panel = encode_traces({file});
  CHECK_THROWS_AS(granger_score(panel, 0, 6, 1.0, 1), DataError);
}

TEST_CASE("duplicating every episode leaves scores unchanged") {
  TraceFile file = synthetic_traces(3, {1}, 40, 15, 99);
  SeriesPanel panel = encode_traces({file});

  TraceFile doubled = file;
  for (const EpisodeTrace& ep : file.episodes) {
    doubled.episodes.push_back(ep);
    doubled.episodes.back().episode += 1000;
  }
  SeriesPanel panel2 = encode_traces({doubled});

  for (int agent = 0; agent < 3; ++agent) {
    double s1 = granger_score(panel, agent, 1, 1.0, 7);
    double s2 = granger_score(panel2, agent, 1, 1.0, 7);
    CHECK(s2 == doctest::Approx(s1).epsilon(1e-9));
  }
}

TEST_CASE("the exact edge set is recovered on synthetic graphs") {
  int exact = 0;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    TraceFile file = synthetic_traces(3, {0, 2}, 80, 20, 5000 + trial);
    SeriesPanel panel = encode_traces({file});
    CausalMatrix m = infer_causal_matrix(panel, 1, 1.0, 1.05, trial);
    if (m.reward_gates() == std::vector<std::uint8_t>{1, 0, 1}) ++exact;
  }
  CHECK(exact >= 18);  // >= 90% of 20 trials
}

TEST_CASE("an infinite threshold yields an empty matrix") {
  TraceFile file = synthetic_traces(2, {0}, 30, 15, 3);
  SeriesPanel panel = encode_traces({file});
  CausalMatrix m =
      infer_causal_matrix(panel, 1, 1.0, std::numeric_limits<double>::infinity(), 1);
  for (std::uint8_t e : m.edges) CHECK(e == 0);
  CHECK(m.reward_gates() == std::vector<std::uint8_t>{0, 0});
}

TEST_CASE("thresholds at or below 1 are rejected") {
  TraceFile file = synthetic_traces(2, {0}, 10, 10, 3);
  SeriesPanel panel = encode_traces({file});
  CHECK_THROWS_AS(infer_causal_matrix(panel, 1, 1.0, 1.0, 1), InvalidConfig);
}

TEST_CASE("relabeling agents permutes scores and edges identically") {
  TraceFile file = synthetic_traces(3, {1}, 60, 20, 42);
  SeriesPanel panel = encode_traces({file});

  // Swap agents 0 and 1 by swapping their feature blocks.
  SeriesPanel swapped = panel;
  for (SeriesPanel::Episode& ep : swapped.episodes) {
    for (int t = 0; t < ep.steps; ++t) {
      double* row = ep.features.data() + static_cast<std::size_t>(t) * ep.width;
      for (int f = 0; f < panel.feature_dim; ++f)
        std::swap(row[f], row[panel.feature_dim + f]);
    }
  }

  CausalMatrix m1 = infer_causal_matrix(panel, 1, 1.0, 1.05, 9);
  CausalMatrix m2 = infer_causal_matrix(swapped, 1, 1.0, 1.05, 9);

  CHECK(m2.score(0, 3) == doctest::Approx(m1.score(1, 3)).epsilon(1e-9));
  CHECK(m2.score(1, 3) == doctest::Approx(m1.score(0, 3)).epsilon(1e-9));
  CHECK(m2.score(2, 3) == doctest::Approx(m1.score(2, 3)).epsilon(1e-9));
  CHECK(m2.edge(0, 3) == m1.edge(1, 3));
  CHECK(m2.edge(1, 3) == m1.edge(0, 3));
  CHECK(m2.edge(2, 3) == m1.edge(2, 3));
}

TEST_CASE("injecting the true cause into an agent raises its score") {
  int holds = 0;
  double mean_before = 0.0, mean_after = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    TraceFile file = synthetic_traces(3, {0}, 60, 20, 9000 + seed);

    // Agent 2 additionally carries a copy of the causal agent's signal.
    TraceFile injected = file;
    for (EpisodeTrace& ep : injected.episodes)
      for (TraceStep& st : ep.steps) st.obs[2].mask[0] = st.obs[0].mask[0];

    SeriesPanel p1 = encode_traces({file});
    SeriesPanel p2 = encode_traces({injected});
    double before = granger_score(p1, 2, 1, 1.0, seed);
    double after = granger_score(p2, 2, 1, 1.0, seed);
    mean_before += before;
    mean_after += after;
    if (after + 1e-9 >= before) ++holds;
  }
  CHECK(holds >= 9);
  CHECK(mean_after > mean_before);
}

TEST_CASE("random-feature expansion still separates cause from noise") {
  TraceFile file = synthetic_traces(2, {0}, 60, 20, 77);
  SeriesPanel panel = encode_traces({file});
  double cause = granger_score(panel, 0, 1, 0.1, 4, 64);
  double noise = granger_score(panel, 1, 1, 0.1, 4, 64);
  CHECK(cause > noise);
  CHECK(std::isfinite(cause));
}

TEST_CASE("predicted credit applies the gate only on rewarded steps") {
  CausalMatrix m;
  m.n_agents = 3;
  m.edges.assign(16, 0);
  m.scores.assign(16, 0.0);
  m.edges[0 * 4 + 3] = 1;  // only agent 0 causal

  std::vector<Observation> obs(3);
  JointStepResult rewarded;
  rewarded.observations.resize(3);
  rewarded.team_reward = 1.0;
  CHECK(predicted_credit(m, obs, rewarded, 5).values ==
        std::vector<std::uint8_t>{1, 0, 0});

  JointStepResult rewardless;
  rewardless.observations.resize(3);
  rewardless.team_reward = 0.0;
  CHECK(predicted_credit(m, obs, rewardless).values ==
        std::vector<std::uint8_t>{1, 1, 1});
}

TEST_CASE("majority gates reproduce oracle masking wherever they agree") {
  EnvConfig cfg;
  cfg.grid_height = 3;
  cfg.grid_width = 3;
  cfg.n_agents = 2;
  cfg.n_preys = 1;
  cfg.mask_radius = 2;
  cfg.max_steps = 50;
  LearnerConfig lc;
  lc.episodes = 200;
  lc.schedule = {1.0, 0.05, 160};
  lc.trace_sample_rate = 1.0;
  TrainResult trained = train_icl(cfg, lc, CreditSource::oracle(), 13);

  // Per-agent majority of the oracle labels over rewarded steps.
  std::vector<long> ones(cfg.n_agents, 0);
  long rewarded_steps = 0;
  for (const EpisodeTrace& ep : trained.traces)
    for (const TraceStep& st : ep.steps) {
      if (!(st.reward > 0)) continue;
      ++rewarded_steps;
      for (int i = 0; i < cfg.n_agents; ++i) ones[i] += st.oracle_c[i];
    }
  REQUIRE(rewarded_steps > 0);

  CausalMatrix m;
  m.n_agents = cfg.n_agents;
  m.edges.assign(9, 0);
  m.scores.assign(9, 0.0);
  for (int i = 0; i < cfg.n_agents; ++i)
    m.edges[static_cast<std::size_t>(i) * 3 + 2] = 2 * ones[i] >= rewarded_steps ? 1 : 0;

  for (const EpisodeTrace& ep : trained.traces)
    for (const TraceStep& st : ep.steps) {
      JointStepResult shim;
      shim.observations = st.obs;
      shim.team_reward = st.reward;
      CausalVector predicted = predicted_credit(m, st.obs, shim, st.step);
      for (int i = 0; i < cfg.n_agents; ++i)
        if (predicted.values[i] == st.oracle_c[i])
          CHECK(predicted.values[i] * st.reward == st.oracle_c[i] * st.reward);
    }
}

TEST_CASE("discovery report arithmetic") {
  auto vec = [](std::vector<std::uint8_t> v, int t) { return CausalVector{std::move(v), t}; };

  SUBCASE("perfect prediction") {
    std::vector<CausalVector> truth = {vec({1, 0}, 0), vec({0, 1}, 1)};
    DiscoveryReport r = score_against_oracle(truth, truth, {1.0, 2.0});
    CHECK(r.accuracy == 1.0);
    CHECK(r.fp == 0);
    CHECK(r.fn == 0);
    CHECK(r.positive_reward_steps == 2);
  }

  SUBCASE("all-ones prediction against 40% zeros") {
    std::vector<CausalVector> predicted, truth;
    std::vector<double> rewards;
    for (int t = 0; t < 5; ++t) {
      predicted.push_back(vec({1, 1}, t));
      rewards.push_back(1.0);
    }
    truth = {vec({1, 1}, 0), vec({1, 1}, 1), vec({1, 1}, 2), vec({0, 0}, 3),
             vec({0, 0}, 4)};
    DiscoveryReport r = score_against_oracle(predicted, truth, rewards);
    CHECK(r.accuracy == doctest::Approx(0.6));
    CHECK(r.fp == 4);
    CHECK(r.fn == 0);
    CHECK(r.fp_rate == doctest::Approx(0.4));
    CHECK(r.fp_share_of_errors == 1.0);
  }

  SUBCASE("zero-reward steps carry no information") {
    std::vector<CausalVector> predicted = {vec({1, 1}, 0), vec({1, 0}, 1)};
    std::vector<CausalVector> truth = {vec({0, 0}, 0), vec({1, 0}, 1)};
    DiscoveryReport r = score_against_oracle(predicted, truth, {0.0, 1.0});
    CHECK(r.accuracy == 1.0);
    CHECK(r.positive_reward_steps == 1);
  }

  SUBCASE("a rewardless trace set cannot be scored") {
    std::vector<CausalVector> v = {vec({1, 1}, 0)};
    CHECK_THROWS_AS(score_against_oracle(v, v, {0.0}), NoPositiveRewardSteps);
  }

  SUBCASE("confusion counts are additive over disjoint sets") {
    std::vector<CausalVector> p1 = {vec({1, 0}, 0)}, t1 = {vec({1, 1}, 0)};
    std::vector<CausalVector> p2 = {vec({0, 1}, 0), vec({1, 1}, 1)};
    std::vector<CausalVector> t2 = {vec({1, 1}, 0), vec({0, 0}, 1)};

    DiscoveryReport a = score_against_oracle(p1, t1, {1.0});
    DiscoveryReport b = score_against_oracle(p2, t2, {1.0, 1.0});

    std::vector<CausalVector> pc = p1, tc = t1;
    pc.insert(pc.end(), p2.begin(), p2.end());
    tc.insert(tc.end(), t2.begin(), t2.end());
    DiscoveryReport c = score_against_oracle(pc, tc, {1.0, 1.0, 1.0});

    CHECK(c.tp == a.tp + b.tp);
    CHECK(c.tn == a.tn + b.tn);
    CHECK(c.fp == a.fp + b.fp);
    CHECK(c.fn == a.fn + b.fn);
  }
}

#include "cmarl/harness.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cmarl/errors.hpp"
#include "cmarl/metrics.hpp"
#include "cmarl/panel.hpp"
#include "cmarl/report.hpp"
#include "cmarl/snapshot.hpp"
#include "cmarl/svg.hpp"
#include "cmarl/trace.hpp"
#include "cmarl/trainer.hpp"

namespace cmarl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* algorithm_color(Algorithm a) {
  switch (a) {
    case Algorithm::Icl: return "#1f77b4";
    case Algorithm::Idql: return "#d62728";
    case Algorithm::Joint: return "#2ca02c";
    case Algorithm::IclPredicted: return "#9467bd";
  }
  return "#555555";
}

}  // namespace

std::string resolve_out_dir(const std::string& out_dir) {
  fs::path p(out_dir);
  if (p.is_absolute()) return out_dir;
  const char* root = std::getenv(kOutRootEnvVar);
  if (root == nullptr || *root == '\0') return out_dir;
  return (fs::path(root) / p).string();
}

std::string seed_dir(const std::string& out_dir, std::uint64_t seed) {
  return (fs::path(out_dir) / ("seed_" + std::to_string(seed))).string();
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  json j;
  j["v"] = kManifestSchemaVersion;
  j["config_hash"] = manifest.config_hash;
  j["seed"] = manifest.seed;
  j["config"] = manifest.canonical_config;
  j["formats"] = {{"metrics", kMetricsSchemaVersion},
                  {"traces", kTraceSchemaVersion},
                  {"qtable", kSnapshotSchemaVersion}};
  write_text_file(path, j.dump(2) + "\n");
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open manifest: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError(path + ": malformed manifest (" + std::string(e.what()) + ")");
  }
  try {
    if (j.at("v").get<int>() != kManifestSchemaVersion)
      throw SchemaVersionMismatch(path + ": unsupported manifest version");
    RunManifest m;
    m.config_hash = j.at("config_hash").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.canonical_config = j.at("config").get<std::string>();
    return m;
  } catch (const SchemaVersionMismatch&) {
    throw;
  } catch (const json::exception& e) {
    throw DataError(path + ": incomplete manifest (" + std::string(e.what()) + ")");
  }
}

TrainOutputs run_train(ExperimentConfig cfg, std::ostream& log) {
  cfg.finalize();
  cfg.validate();

  std::string out_root = resolve_out_dir(cfg.run.out_dir);
  fs::create_directories(out_root);

  CreditSource credit = CreditSource::always_one();
  switch (cfg.algorithm) {
    case Algorithm::Icl: credit = CreditSource::oracle(); break;
    case Algorithm::Idql: credit = CreditSource::always_one(); break;
    case Algorithm::Joint: break;
    case Algorithm::IclPredicted: {
      CausalMatrix m = read_causal_matrix_json(cfg.predicted_matrix_path);
      if (m.n_agents != cfg.env.n_agents)
        throw DataError("predicted matrix is for " + std::to_string(m.n_agents) +
                        " agents but the environment has " +
                        std::to_string(cfg.env.n_agents));
      credit = CreditSource::predicted(m.reward_gates());
      break;
    }
  }

  const std::string config_hash = config_hash_hex(cfg);
  const std::string canonical = canonical_config_text(cfg);

  TrainOutputs outputs;
  for (std::uint64_t seed : cfg.run.seeds) {
    std::string dir = seed_dir(out_root, seed);
    fs::create_directories(dir);
    log << "train " << algorithm_name(cfg.algorithm) << " task="
        << task_name(cfg.env.task) << " seed=" << seed << " episodes="
        << cfg.learner.episodes << " -> " << dir << "\n";

    if (cfg.algorithm == Algorithm::Joint) {
      JointTrainResult result = train_joint(cfg.env, cfg.learner, seed);
      write_metrics_csv(dir + "/metrics.csv", result.metrics);
    } else {
      TrainResult result = train_icl(cfg.env, cfg.learner, credit, seed);
      write_metrics_csv(dir + "/metrics.csv", result.metrics);

      TraceMeta meta;
      meta.task = cfg.env.task;
      meta.n_agents = cfg.env.n_agents;
      meta.mask_radius = cfg.env.mask_radius;
      meta.tree_level_max = cfg.env.task == Task::Lumberjacks ? cfg.env.tree_level_max : 0;
      meta.config_hash = config_hash;
      write_traces_jsonl(dir + "/traces.jsonl", meta, result.traces);

      QTableSnapshot snap;
      snap.tables = std::move(result.tables);
      snap.env_hash = env_hash_hex(cfg.env);
      write_qtable_snapshot(dir + "/qtables.txt", snap);
    }

    write_manifest(dir + "/manifest.json", {config_hash, seed, canonical});
    outputs.run_dirs.push_back(dir);
  }
  return outputs;
}

EvalReport run_eval(const std::string& run_dir, long episodes, std::uint64_t seed,
                    const EnvConfig* expected_env, std::ostream& log) {
  RunManifest manifest = read_manifest(run_dir + "/manifest.json");
  ExperimentConfig cfg = parse_config_text(manifest.canonical_config, run_dir + "/manifest.json");
  cfg.finalize();

  if (expected_env != nullptr && env_hash_hex(*expected_env) != env_hash_hex(cfg.env))
    throw SnapshotMismatch("snapshot was trained on a different environment (env hash " +
                           env_hash_hex(cfg.env) + ", requested " +
                           env_hash_hex(*expected_env) + ")");

  QTableSnapshot snap = read_qtable_snapshot(run_dir + "/qtables.txt");
  if (snap.env_hash != env_hash_hex(cfg.env))
    throw SnapshotMismatch("snapshot env hash does not match the run manifest");
  if (static_cast<int>(snap.tables.size()) != cfg.env.n_agents)
    throw SnapshotMismatch("snapshot holds " + std::to_string(snap.tables.size()) +
                           " tables but the environment has " +
                           std::to_string(cfg.env.n_agents) + " agents");

  log << "eval " << run_dir << " episodes=" << episodes << " seed=" << seed << "\n";
  EvalReport report = evaluate_policy(snap.tables, cfg.env, episodes, seed);

  write_participation_csv(run_dir + "/participation.csv", report.participation);
  write_distance_csv(run_dir + "/distance.csv", report.distance_series);

  json j;
  j["v"] = 1;
  j["episodes"] = episodes;
  j["seed"] = seed;
  j["mean_team_reward"] = report.mean_team_reward;
  j["participation"] = report.participation;
  write_text_file(run_dir + "/eval_summary.json", j.dump(2) + "\n");
  return report;
}

DiscoverOutputs run_discover(const std::string& traces_dir, const DiscoveryConfig& params,
                             std::uint64_t seed, const std::string& out_dir,
                             std::ostream& log) {
  std::vector<TraceFile> files = read_traces_dir(traces_dir);
  if (files.empty()) throw DataError("no .jsonl trace files in " + traces_dir);
  SeriesPanel panel = encode_traces(files);

  log << "discover traces=" << traces_dir << " episodes=" << panel.episodes.size()
      << " lag=" << params.lag << " lambda=" << params.lambda << " theta="
      << params.threshold << "\n";

  DiscoverOutputs out;
  out.matrix = infer_causal_matrix(panel, params.lag, params.lambda, params.threshold,
                                   seed, params.random_features);

  // Score the inferred gates against the stored oracle labels over every
  // traced step.
  std::vector<CausalVector> predicted, truth;
  std::vector<double> rewards;
  for (const TraceFile& f : files) {
    for (const EpisodeTrace& ep : f.episodes) {
      for (const TraceStep& st : ep.steps) {
        JointStepResult shim;
        shim.observations = st.obs;
        shim.team_reward = st.reward;
        predicted.push_back(predicted_credit(out.matrix, st.obs, shim, st.step));
        truth.push_back({st.oracle_c, st.step});
        rewards.push_back(st.reward);
      }
    }
  }
  out.report = score_against_oracle(predicted, truth, rewards);

  std::string resolved = resolve_out_dir(out_dir);
  fs::create_directories(resolved);
  write_causal_matrix_json(resolved + "/causal_matrix.json", out.matrix, params);
  write_discovery_report_json(resolved + "/discovery_report.json", out.report);
  return out;
}

void write_causal_matrix_json(const std::string& path, const CausalMatrix& matrix,
                              const DiscoveryConfig& params) {
  json j;
  j["v"] = 1;
  j["n_agents"] = matrix.n_agents;
  json edges = json::array(), scores = json::array();
  for (int i = 0; i < matrix.size(); ++i) {
    json erow = json::array(), srow = json::array();
    for (int k = 0; k < matrix.size(); ++k) {
      erow.push_back(static_cast<int>(matrix.edge(i, k)));
      srow.push_back(matrix.score(i, k));
    }
    edges.push_back(std::move(erow));
    scores.push_back(std::move(srow));
  }
  j["edges"] = std::move(edges);
  j["scores"] = std::move(scores);
  j["params"] = {{"lag", params.lag},
                 {"lambda", params.lambda},
                 {"theta", params.threshold},
                 {"random_features", params.random_features}};
  write_text_file(path, j.dump(2) + "\n");
}

CausalMatrix read_causal_matrix_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open causal matrix: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError(path + ": malformed causal matrix (" + std::string(e.what()) + ")");
  }
  try {
    if (j.at("v").get<int>() != 1)
      throw SchemaVersionMismatch(path + ": unsupported causal matrix version");
    CausalMatrix m;
    m.n_agents = j.at("n_agents").get<int>();
    int size = m.n_agents + 1;
    m.edges.assign(static_cast<std::size_t>(size) * size, 0);
    m.scores.assign(static_cast<std::size_t>(size) * size, 0.0);
    const json& edges = j.at("edges");
    const json& scores = j.at("scores");
    for (int i = 0; i < size; ++i) {
      for (int k = 0; k < size; ++k) {
        m.edges[static_cast<std::size_t>(i) * size + k] =
            static_cast<std::uint8_t>(edges.at(i).at(k).get<int>());
        m.scores[static_cast<std::size_t>(i) * size + k] = scores.at(i).at(k).get<double>();
      }
    }
    return m;
  } catch (const SchemaVersionMismatch&) {
    throw;
  } catch (const json::exception& e) {
    throw DataError(path + ": incomplete causal matrix (" + std::string(e.what()) + ")");
  }
}

void write_discovery_report_json(const std::string& path, const DiscoveryReport& report) {
  json j;
  j["v"] = 1;
  j["n_agents"] = report.n_agents;
  j["positive_reward_steps"] = report.positive_reward_steps;
  j["tp"] = report.tp;
  j["tn"] = report.tn;
  j["fp"] = report.fp;
  j["fn"] = report.fn;
  j["accuracy"] = report.accuracy;
  j["fp_rate"] = report.fp_rate;
  j["fn_rate"] = report.fn_rate;
  j["fp_share_of_errors"] = report.fp_share_of_errors;
  write_text_file(path, j.dump(2) + "\n");
}

void write_participation_csv(const std::string& path,
                             const std::vector<long>& participation) {
  std::ostringstream out;
  out << "# cmarl-participation v1\n";
  out << "agent,participation\n";
  for (std::size_t i = 0; i < participation.size(); ++i)
    out << i << ',' << participation[i] << '\n';
  write_text_file(path, out.str());
}

std::vector<long> read_participation_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open participation file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "# cmarl-participation v1")
    throw SchemaVersionMismatch(path + ": unsupported participation header");
  std::getline(in, line);  // column header
  std::vector<long> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    long agent = 0, value = 0;
    char comma;
    if (!(ss >> agent >> comma >> value) || comma != ',')
      throw DataError(path + ": malformed participation row '" + line + "'");
    out.push_back(value);
  }
  return out;
}

void write_distance_csv(const std::string& path, const std::vector<double>& series) {
  std::ostringstream out;
  out << "# cmarl-distance v1\n";
  out << "step,distance_sum\n";
  for (std::size_t i = 0; i < series.size(); ++i)
    out << i << ',' << fmt(series[i]) << '\n';
  write_text_file(path, out.str());
}

std::vector<double> read_distance_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open distance file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "# cmarl-distance v1")
    throw SchemaVersionMismatch(path + ": unsupported distance header");
  std::getline(in, line);  // column header
  std::vector<double> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    long step = 0;
    double value = 0.0;
    char comma;
    if (!(ss >> step >> comma >> value) || comma != ',')
      throw DataError(path + ": malformed distance row '" + line + "'");
    out.push_back(value);
  }
  return out;
}

namespace {

struct RunGroup {
  Task task = Task::PredatorPrey;
  Algorithm algorithm = Algorithm::Icl;
  std::vector<std::string> dirs;
};

}  // namespace

void run_report(const std::vector<std::string>& run_dirs, const std::string& out_dir,
                int window, std::ostream& log) {
  if (run_dirs.empty()) throw DataError("report needs at least one run directory");

  std::map<std::pair<std::string, std::string>, RunGroup> groups;
  for (const std::string& dir : run_dirs) {
    RunManifest manifest = read_manifest(dir + "/manifest.json");
    ExperimentConfig cfg = parse_config_text(manifest.canonical_config, dir);
    cfg.finalize();
    auto key = std::make_pair(std::string(task_name(cfg.env.task)),
                              std::string(algorithm_name(cfg.algorithm)));
    RunGroup& g = groups[key];
    g.task = cfg.env.task;
    g.algorithm = cfg.algorithm;
    g.dirs.push_back(dir);
  }

  std::string resolved = resolve_out_dir(out_dir);
  fs::create_directories(resolved);

  std::ostringstream comparison;
  comparison << "# cmarl-comparison v1\n";
  comparison << "task,algorithm,episode,median_return,q25,q75\n";

  std::map<std::string, std::vector<SvgSeries>> curves_by_task;
  std::map<std::string, std::map<std::string, std::vector<std::vector<double>>>>
      participation_by_task;
  std::map<std::string, std::map<std::string, std::vector<std::vector<double>>>>
      distance_by_task;

  for (auto& [key, group] : groups) {
    std::vector<std::vector<double>> smoothed;
    for (const std::string& dir : group.dirs) {
      MetricsSeries metrics = read_metrics_csv(dir + "/metrics.csv");
      smoothed.push_back(moving_average(metrics.returns(), window));

      std::string participation_path = dir + "/participation.csv";
      if (fs::exists(participation_path)) {
        std::vector<long> p = read_participation_csv(participation_path);
        participation_by_task[key.first][key.second].push_back(
            std::vector<double>(p.begin(), p.end()));
      }
      std::string distance_path = dir + "/distance.csv";
      if (fs::exists(distance_path))
        distance_by_task[key.first][key.second].push_back(read_distance_csv(distance_path));
    }

    BandSeries band = median_band(smoothed);
    for (std::size_t i = 0; i < band.xs.size(); ++i)
      comparison << key.first << ',' << key.second << ',' << static_cast<long>(band.xs[i])
                 << ',' << fmt(band.median[i]) << ',' << fmt(band.q25[i]) << ','
                 << fmt(band.q75[i]) << '\n';

    SvgSeries series;
    series.label = key.second;
    series.color = algorithm_color(group.algorithm);
    series.xs = band.xs;
    series.ys = band.median;
    series.band_lo = band.q25;
    series.band_hi = band.q75;
    curves_by_task[key.first].push_back(std::move(series));
  }

  write_text_file(resolved + "/comparison.csv", comparison.str());

  for (const auto& [task, series] : curves_by_task) {
    std::string path = resolved + "/reward_curve_" + task + ".svg";
    write_text_file(path, line_chart_svg("team return (" + task + ")", "episode (smoothed)",
                                          "median return", series));
    log << "wrote " << path << "\n";
  }

  for (const auto& [task, by_alg] : participation_by_task) {
    std::vector<std::string> labels, colors;
    std::size_t n_agents = 0;
    for (const auto& [alg, rows] : by_alg)
      for (const auto& row : rows) n_agents = std::max(n_agents, row.size());
    std::vector<BarGroup> bars(n_agents);
    for (std::size_t a = 0; a < n_agents; ++a) bars[a].label = "agent " + std::to_string(a);
    for (const auto& [alg, rows] : by_alg) {
      labels.push_back(alg);
      colors.push_back(algorithm_color(algorithm_from_name(alg)));
      for (std::size_t a = 0; a < n_agents; ++a) {
        double sum = 0.0;
        for (const auto& row : rows) sum += a < row.size() ? row[a] : 0.0;
        bars[a].values.push_back(rows.empty() ? 0.0 : sum / static_cast<double>(rows.size()));
      }
    }
    std::string path = resolved + "/participation_" + task + ".svg";
    write_text_file(path, bar_chart_svg("event participation (" + task + ")",
                                         "mean events per agent", labels, colors, bars));
    log << "wrote " << path << "\n";
  }

  for (const auto& [task, by_alg] : distance_by_task) {
    std::vector<SvgSeries> series;
    for (const auto& [alg, rows] : by_alg) {
      BandSeries band = median_band(rows);
      SvgSeries s;
      s.label = alg;
      s.color = algorithm_color(algorithm_from_name(alg));
      s.xs = band.xs;
      s.ys = band.median;
      series.push_back(std::move(s));
    }
    std::string path = resolved + "/distance_" + task + ".svg";
    write_text_file(path, line_chart_svg("agent spread (" + task + ")", "step",
                                          "sum of pairwise distances", series));
    log << "wrote " << path << "\n";
  }
}

}  // namespace cmarl

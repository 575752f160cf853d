#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cmarl/config.hpp"
#include "cmarl/eval.hpp"
#include "cmarl/granger.hpp"

namespace cmarl {

inline constexpr int kManifestSchemaVersion = 1;

// Output root for relative out dirs; see resolve_out_dir.
inline constexpr const char* kOutRootEnvVar = "CMARL_OUT_ROOT";

std::string resolve_out_dir(const std::string& out_dir);

struct RunManifest {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string canonical_config;
};

void write_manifest(const std::string& path, const RunManifest& manifest);
RunManifest read_manifest(const std::string& path);

// Per-seed output directory layout under an experiment out dir.
std::string seed_dir(const std::string& out_dir, std::uint64_t seed);

struct TrainOutputs {
  std::vector<std::string> run_dirs;  // one per seed, in seed order
};

// Trains every seed of the experiment sequentially; each seed writes
// metrics.csv, manifest.json and (for the independent learners)
// traces.jsonl plus qtables.txt into its own directory.
TrainOutputs run_train(ExperimentConfig cfg, std::ostream& log);

// Greedy evaluation of a trained run directory. The environment comes
// from the run's manifest; when expected_env is non-null it must match or
// SnapshotMismatch is thrown. Writes participation.csv, distance.csv and
// eval_summary.json next to the snapshot.
EvalReport run_eval(const std::string& run_dir, long episodes, std::uint64_t seed,
                    const EnvConfig* expected_env, std::ostream& log);

struct DiscoverOutputs {
  CausalMatrix matrix;
  DiscoveryReport report;
};

// Infers the causal matrix from every trace file in traces_dir, scores it
// against the stored oracle labels and writes causal_matrix.json and
// discovery_report.json into out_dir.
DiscoverOutputs run_discover(const std::string& traces_dir, const DiscoveryConfig& params,
                             std::uint64_t seed, const std::string& out_dir,
                             std::ostream& log);

// Aggregates trained run directories (median + IQR across seeds of the
// smoothed reward curves, grouped by task and algorithm) into
// comparison.csv and SVG charts under out_dir.
void run_report(const std::vector<std::string>& run_dirs, const std::string& out_dir,
                int window, std::ostream& log);

void write_causal_matrix_json(const std::string& path, const CausalMatrix& matrix,
                              const DiscoveryConfig& params);
CausalMatrix read_causal_matrix_json(const std::string& path);
void write_discovery_report_json(const std::string& path, const DiscoveryReport& report);

void write_participation_csv(const std::string& path, const std::vector<long>& participation);
std::vector<long> read_participation_csv(const std::string& path);
void write_distance_csv(const std::string& path, const std::vector<double>& series);
std::vector<double> read_distance_csv(const std::string& path);

}  // namespace cmarl

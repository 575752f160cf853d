// cmarl - cooperative gridworld Q-learning workbench with causal credit
// assignment and Granger-based causal discovery over recorded episodes.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmarl/config.hpp"
#include "cmarl/errors.hpp"
#include "cmarl/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;

int dispatch(const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const cmarl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const cmarl::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cooperative multi-agent Q-learning workbench with causal credit"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "train learners and record traces");
  std::string train_config;
  std::vector<std::string> train_overrides;
  std::int64_t train_seed = -1;
  std::string train_out;
  train->add_option("--config", train_config, "experiment config file")->required();
  train->add_option("--seed", train_seed, "train only this seed");
  train->add_option("--out", train_out, "override run.out_dir");
  train->add_option("--override", train_overrides, "section.key=value overrides");

  // eval
  auto* eval = app.add_subcommand("eval", "greedy evaluation of a trained run");
  std::string eval_run_dir, eval_config;
  long eval_episodes = 50;
  std::uint64_t eval_seed = 1;
  eval->add_option("run_dir", eval_run_dir, "trained seed directory")->required();
  eval->add_option("--episodes", eval_episodes, "evaluation episodes (default 50)");
  eval->add_option("--seed", eval_seed, "evaluation seed");
  eval->add_option("--config", eval_config,
                   "config whose env section must match the snapshot");

  // discover
  auto* discover = app.add_subcommand("discover", "infer causal edges from traces");
  std::string discover_traces, discover_out = "discovery";
  std::string discover_config;
  cmarl::DiscoveryConfig params;
  std::uint64_t discover_seed = 1;
  discover->add_option("traces_dir", discover_traces, "directory of trace .jsonl files")
      ->required();
  discover->add_option("--out", discover_out, "output directory");
  discover->add_option("--config", discover_config, "read discovery params from a config");
  discover->add_option("--lag", params.lag, "lag steps (default 1)");
  discover->add_option("--lambda", params.lambda, "ridge strength (default 1.0)");
  discover->add_option("--theta", params.threshold, "edge threshold (default 1.05)");
  discover->add_option("--random-features", params.random_features,
                       "ReLU random features per agent block (default 0 = linear)");
  discover->add_option("--seed", discover_seed, "seed for random features");

  // report
  auto* report = app.add_subcommand("report", "aggregate runs into CSV + SVG charts");
  std::vector<std::string> report_dirs;
  std::string report_out = "report";
  int report_window = 100;
  report->add_option("run_dirs", report_dirs, "trained seed directories")->required();
  report->add_option("--out", report_out, "output directory");
  report->add_option("--window", report_window, "moving-average window (default 100)");

  CLI11_PARSE(app, argc, argv);

  if (train->parsed()) {
    return dispatch([&] {
      cmarl::ExperimentConfig cfg = cmarl::parse_config_file(train_config);
      for (const std::string& o : train_overrides) cmarl::apply_override(cfg, o);
      if (train_seed >= 0) cfg.run.seeds = {static_cast<std::uint64_t>(train_seed)};
      if (!train_out.empty()) cfg.run.out_dir = train_out;
      cmarl::run_train(cfg, std::cout);
    });
  }
  if (eval->parsed()) {
    return dispatch([&] {
      if (!eval_config.empty()) {
        cmarl::ExperimentConfig cfg = cmarl::parse_config_file(eval_config);
        cfg.finalize();
        cmarl::run_eval(eval_run_dir, eval_episodes, eval_seed, &cfg.env, std::cout);
      } else {
        cmarl::run_eval(eval_run_dir, eval_episodes, eval_seed, nullptr, std::cout);
      }
    });
  }
  if (discover->parsed()) {
    return dispatch([&] {
      if (!discover_config.empty()) {
        cmarl::ExperimentConfig cfg = cmarl::parse_config_file(discover_config);
        cfg.finalize();
        cmarl::DiscoveryConfig from_file = cfg.discovery;
        // Explicit flags win over the config file.
        if (discover->count("--lag") == 0) params.lag = from_file.lag;
        if (discover->count("--lambda") == 0) params.lambda = from_file.lambda;
        if (discover->count("--theta") == 0) params.threshold = from_file.threshold;
        if (discover->count("--random-features") == 0)
          params.random_features = from_file.random_features;
      }
      cmarl::run_discover(discover_traces, params, discover_seed, discover_out, std::cout);
    });
  }
  if (report->parsed()) {
    return dispatch([&] {
      cmarl::run_report(report_dirs, report_out, report_window, std::cout);
    });
  }
  return kExitOk;
}

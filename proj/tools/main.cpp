#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "icfw/experiment.hpp"
#include "icfw/types.hpp"

namespace {

using namespace icfw;

struct PolicyOptions {
  std::string policy = "det";
  double alpha = 1.0;
  std::string beta_rule = "eq";
  double c = 1.0;

  RankingPolicy resolve() const {
    if (policy == "det") return RankingPolicy::deterministic();
    if (policy == "rand") return RankingPolicy::randomized();
    if (policy == "iw") return RankingPolicy::inverse_weighted();
    if (policy == "scaledpl") return RankingPolicy::scaled_pl(c);
    if (policy == "plicfw") {
      const double beta = beta_rule == "0.35" ? 0.35 * alpha : alpha;
      return RankingPolicy::pl_icfw(alpha, beta);
    }
    throw config_error("unknown policy '" + policy + "'");
  }
};

void add_policy_options(CLI::App* cmd, PolicyOptions& opts) {
  cmd->add_option("--policy", opts.policy,
                  "Ranking policy: det, rand, iw, scaledpl, plicfw")
      ->check(CLI::IsMember({"det", "rand", "iw", "scaledpl", "plicfw"}));
  cmd->add_option("--alpha", opts.alpha, "PL-ICFW alpha (>= 0)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--beta-rule", opts.beta_rule,
                  "PL-ICFW beta rule: eq (beta = alpha) or 0.35")
      ->check(CLI::IsMember({"eq", "0.35"}));
  cmd->add_option("--c", opts.c, "Scaled PL constant (>= 0)")
      ->check(CLI::NonNegativeNumber);
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw config_error("cannot open output file " + path);
  return file;
}

void emit_single(const Universe& universe, const RankingPolicy& policy,
                 int trials, const std::string& out_path, ExecMode mode) {
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  write_csv_header(out);
  write_csv_rows(out, run_experiment(universe, policy, trials, 0, mode));
}

int run(int argc, char** argv) {
  CLI::App app{
      "Exposure-inequality simulator for two-stage recommenders: "
      "Plackett-Luce ranking policies with inverse candidate frequency "
      "weights, baselines, and tradeoff sweeps"};
  app.require_subcommand(1);

  bool serial = false;
  app.add_flag("--serial", serial,
               "Use the serial reference kernel instead of OpenMP");

  // toy
  auto* toy_cmd = app.add_subcommand(
      "toy", "Ten-producer toy instance: deterministic vs randomized "
             "expected impressions");
  int toy_trials = 100000;
  std::uint64_t toy_seed = 1;
  toy_cmd->add_option("--trials", toy_trials, "Monte Carlo trials")
      ->check(CLI::PositiveNumber);
  toy_cmd->add_option("--seed", toy_seed, "RNG seed");

  // simulate
  auto* sim_cmd =
      app.add_subcommand("simulate", "Run one policy on the synthetic universe");
  std::string sim_config, sim_out, sim_scores;
  int sim_trials = 5;
  PolicyOptions sim_policy;
  sim_cmd->add_option("--config", sim_config, "Experiment config file");
  sim_cmd->add_option("--out", sim_out, "Output CSV (default stdout)");
  sim_cmd->add_option("--trials", sim_trials, "Trials per policy")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--scores", sim_scores,
                      "External per-item scores CSV (item_id,score)");
  add_policy_options(sim_cmd, sim_policy);

  // german
  auto* ger_cmd = app.add_subcommand(
      "german", "Run one policy on the German credit universe");
  std::string ger_data, ger_config, ger_out, ger_universe_out, ger_scores;
  int ger_trials = 5;
  PolicyOptions ger_policy;
  ger_cmd->add_option("--data", ger_data, "German credit data file")
      ->required();
  ger_cmd->add_option("--config", ger_config, "Experiment config file");
  ger_cmd->add_option("--out", ger_out, "Output CSV (default stdout)");
  ger_cmd->add_option("--out-universe", ger_universe_out,
                      "Write the constructed universe CSV here");
  ger_cmd->add_option("--trials", ger_trials, "Trials per policy")
      ->check(CLI::PositiveNumber);
  ger_cmd->add_option("--scores", ger_scores,
                      "External per-item scores CSV (item_id,score)");
  add_policy_options(ger_cmd, ger_policy);

  // sweep
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Hyperparameter sweep over policies, one CSV row per trial");
  std::string sweep_config, sweep_spec_path, sweep_out, sweep_data,
      sweep_scores;
  sweep_cmd->add_option("--config", sweep_config, "Experiment config file");
  sweep_cmd->add_option("--spec", sweep_spec_path, "Sweep spec file");
  sweep_cmd->add_option("--out", sweep_out, "Output CSV (default stdout)");
  sweep_cmd->add_option("--data", sweep_data,
                        "German credit data file (switches to the German "
                        "universe)");
  sweep_cmd->add_option("--scores", sweep_scores,
                        "External per-item scores CSV (item_id,score)");

  CLI11_PARSE(app, argc, argv);
  const ExecMode mode = serial ? ExecMode::Serial : ExecMode::Parallel;

  if (toy_cmd->parsed()) {
    const ToyResult r = toy_demo(toy_trials, toy_seed);
    std::printf("producer,deterministic,randomized_mc,randomized_closed\n");
    for (std::size_t p = 0; p < r.producers.size(); ++p) {
      std::printf("%s,%.6g,%.6g,%.6g\n", r.producers[p].c_str(),
                  r.deterministic[p], r.randomized_mc[p],
                  r.randomized_closed[p]);
    }
    return 0;
  }

  if (sim_cmd->parsed()) {
    const ExperimentConfig cfg = sim_config.empty()
                                     ? ExperimentConfig::synthetic_defaults()
                                     : ExperimentConfig::load(sim_config);
    Universe universe = build_synthetic_universe(cfg);
    if (!sim_scores.empty()) apply_external_scores(universe, sim_scores);
    emit_single(universe, sim_policy.resolve(), sim_trials, sim_out, mode);
    return 0;
  }

  if (ger_cmd->parsed()) {
    const ExperimentConfig cfg = ger_config.empty()
                                     ? ExperimentConfig::german_defaults()
                                     : ExperimentConfig::load(ger_config);
    GermanUniverse gu = build_german_universe(ger_data, cfg);
    if (!ger_universe_out.empty()) {
      std::ofstream uf(ger_universe_out);
      if (!uf) throw config_error("cannot open " + ger_universe_out);
      write_german_universe_csv(uf, gu);
    }
    if (!ger_scores.empty()) apply_external_scores(gu.universe, ger_scores);
    emit_single(gu.universe, ger_policy.resolve(), ger_trials, ger_out, mode);
    return 0;
  }

  if (sweep_cmd->parsed()) {
    const bool german = !sweep_data.empty();
    const ExperimentConfig cfg =
        sweep_config.empty()
            ? (german ? ExperimentConfig::german_defaults()
                      : ExperimentConfig::synthetic_defaults())
            : ExperimentConfig::load(sweep_config);
    Universe universe;
    if (german) {
      universe = build_german_universe(sweep_data, cfg).universe;
    } else {
      universe = build_synthetic_universe(cfg);
    }
    if (!sweep_scores.empty()) apply_external_scores(universe, sweep_scores);
    const SweepSpec spec =
        sweep_spec_path.empty()
            ? SweepSpec::defaults(german ? "german" : "synthetic")
            : SweepSpec::load(sweep_spec_path);
    std::ofstream file;
    std::ostream& out = open_out(file, sweep_out);
    sweep(universe, spec, out, mode);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const icfw::capacity_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const icfw::data_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

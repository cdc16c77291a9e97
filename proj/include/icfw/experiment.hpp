#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "icfw/metrics.hpp"
#include "icfw/types.hpp"
#include "icfw/universe.hpp"

namespace icfw {

struct TrialMetrics {
  double t1ps_pct = 0.0;
  double content_quality = 0.0;
  double gini = 0.0;
  double runtime_ms = 0.0;
};

/// Per-policy result: metrics of each trial plus their mean. The
/// simulation (and so every field except runtime_ms) is a pure function
/// of (universe, policy, seed, grid_index).
struct ResultRow {
  RankingPolicy policy;
  std::uint64_t seed = 0;
  int trials = 0;
  TrialMetrics mean;
  std::vector<TrialMetrics> per_trial;
};

/// Samples one ranking per user per trial, accumulates the top-ell
/// impression ledger, and returns metrics per trial and averaged.
ResultRow run_experiment(const Universe& universe, const RankingPolicy& policy,
                         int trials, std::uint64_t grid_index,
                         ExecMode mode = ExecMode::Serial);

/// Expanded hyperparameter sweep: points carries policies in emission
/// order (baselines first, then the ScaledPL c-grid, then the PL-ICFW
/// alpha-grid per beta rule).
struct SweepSpec {
  std::vector<RankingPolicy> points;
  int trials = 5;

  /// Appendix grids: {0.01, 0.025, 1.5, 2, 2.5, 3, 3.5, 4, 4.5} plus
  /// 0.05..1.00 in steps of 0.05; the German grid swaps the tail for
  /// {1.5, 2} plus 1.0..7.0 in steps of 0.5.
  static std::vector<double> synthetic_grid();
  static std::vector<double> german_grid();

  /// Builds the default spec for a grid kind ("synthetic" or "german"),
  /// baselines included, both beta rules (beta = alpha, beta = 0.35 alpha).
  static SweepSpec defaults(const std::string& grid_kind);

  /// key = value spec file. Keys: grid (synthetic|german|custom),
  /// values (comma list, custom grid), beta_rules (comma list of
  /// eq|0.35), policies (comma list of det,rand,iw,scaledpl,plicfw),
  /// trials.
  static SweepSpec load(const std::string& path);
};

/// Runs every grid point and writes one CSV row per (point, trial).
/// Columns: policy,alpha,beta,c,seed,trial,t1ps_pct,content_quality,
/// gini,runtime_ms. Byte-identical across serial and parallel runs
/// except for runtime_ms.
std::vector<ResultRow> sweep(const Universe& universe, const SweepSpec& spec,
                             std::ostream& csv,
                             ExecMode mode = ExecMode::Serial);

void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, const ResultRow& row);

/// The ten-consumer / ten-producer instance with k = 4, ell = 1:
/// producer J sits in every candidate set, and deterministic ranking
/// gives each producer exactly one impression.
Universe build_toy_universe();

struct ToyResult {
  std::vector<std::string> producers;       // "A".."J"
  std::vector<double> deterministic;        // impressions per producer
  std::vector<double> randomized_mc;        // Monte Carlo expectation
  std::vector<double> randomized_closed;    // appearances * ell / k
};
ToyResult toy_demo(int mc_trials = 100000, std::uint64_t seed = 1);

/// Full German pipeline: load, encode, train the logistic scorer,
/// draw the m-candidate subset, boost ranks 51..60, and build candidate
/// sets. source_rows/boosted expose the construction for the universe CSV.
struct GermanUniverse {
  Universe universe;
  std::vector<int> source_rows;       // per item, row in the data file
  std::vector<bool> boosted;          // per item
  std::vector<double> learned;        // per item, sigmoid relevance
};
GermanUniverse build_german_universe(const std::string& data_path,
                                     const ExperimentConfig& config);

void write_german_universe_csv(std::ostream& out, const GermanUniverse& gu);

/// Replaces per-item relevance with externally supplied scores
/// (CSV: item_id,score header then one row per item) and rebuilds the
/// per-set score views. The candidate sets and frequencies stay fixed.
void apply_external_scores(Universe& u, const std::string& scores_csv_path);

}  // namespace icfw

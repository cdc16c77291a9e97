#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "icfw/rng.hpp"
#include "icfw/types.hpp"

namespace icfw {

/// Universe parameters for one experiment. Synthetic defaults: n = 2000
/// users, m = 1000 items, candidate sets of size k = 40, viewed prefix
/// ell = 10, 10 boosted items with candidate score 5, remaining scores
/// Beta(1, 10). German defaults: m = 200, k = 15, ell = 5.
struct ExperimentConfig {
  int n_users = 2000;
  int m_items = 1000;
  int k = 40;
  int ell = 10;
  int n_popular = 10;
  double popular_score = 5.0;
  double beta_a = 1.0;
  double beta_b = 10.0;
  std::uint64_t seed = 1;

  void validate() const;

  static ExperimentConfig synthetic_defaults() { return {}; }
  static ExperimentConfig german_defaults() {
    ExperimentConfig c;
    c.m_items = 200;
    c.k = 15;
    c.ell = 5;
    return c;
  }

  /// Flat key = value file; '#' starts a comment. Unknown keys are
  /// config errors.
  static ExperimentConfig load(const std::string& path);
};

/// One Beta(a, b) variate. For a = 1 the inverse CDF 1 - (1-u)^(1/b) is
/// used; the general case goes through two gamma draws.
double beta_sample(double a, double b, Rng& rng);

/// Candidate scores c_i: every id listed in `boosted` gets
/// config.popular_score, everyone else draws i.i.d. Beta(beta_a, beta_b).
std::vector<double> gen_candidate_scores(const ExperimentConfig& config,
                                         std::span<const ItemId> boosted,
                                         Rng& rng);

/// k distinct items drawn sequentially without replacement, each step
/// proportional to the remaining candidate scores. Realized as one
/// exponential-keys ranking over all scores truncated to the first k,
/// which induces the same distribution.
std::vector<ItemId> sample_candidate_set(std::span<const double> cand_scores,
                                         int k, Rng& rng);

/// Synthetic ground truth r_i = max(0, 5 - c_i + x_i), x_i ~ N(0,1).
/// Anti-correlated with the candidate scores by construction.
std::vector<double> gen_relevance_synthetic(
    std::span<const double> candidate_scores, Rng& rng);

}  // namespace icfw

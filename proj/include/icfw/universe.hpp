#pragma once

#include <vector>

#include "icfw/frequency.hpp"
#include "icfw/simgen.hpp"
#include "icfw/types.hpp"

namespace icfw {

/// Fully built experiment instance: one candidate set per user, per-item
/// ground truth for content quality, and the batch frequencies W_v
/// computed once before any ranking is sampled. Immutable during
/// simulation.
struct Universe {
  ExperimentConfig config;
  std::vector<double> candidate_scores;  // per item; empty for the toy
  std::vector<double> relevance;         // per item; empty when per-set
  std::vector<double> truth;             // per item, content-quality input
  std::vector<CandidateSet> sets;        // one per user
  FrequencyTable freqs;
  std::vector<long long> item_freq;      // dense W_v, indexed by ItemId

  int n_users() const { return static_cast<int>(sets.size()); }
  int m_items() const { return config.m_items; }
};

/// Generates the synthetic universe for config.seed: candidate scores
/// (items 0..n_popular-1 boosted), anti-correlated relevance, and one
/// size-k candidate set per user from a per-user substream.
Universe build_synthetic_universe(const ExperimentConfig& config);

/// Finalizes a universe whose sets/truth are already filled: computes
/// W_v and the dense view.
void finalize_universe(Universe& u);

}  // namespace icfw

#include "icfw/universe.hpp"

#include <numeric>

#include "icfw/rng.hpp"

namespace icfw {

void finalize_universe(Universe& u) {
  u.freqs = candidate_frequencies(u.sets);
  u.item_freq = dense_frequencies(u.freqs, u.config.m_items);
}

Universe build_synthetic_universe(const ExperimentConfig& config) {
  config.validate();
  Universe u;
  u.config = config;

  // Boosted subset is the fixed prefix 0..n_popular-1; seed-independent
  // so RNG effects are isolated to the draws themselves.
  std::vector<ItemId> boosted(config.n_popular);
  std::iota(boosted.begin(), boosted.end(), 0);

  Rng score_rng = substream(config.seed, kStreamCandidateScores);
  u.candidate_scores = gen_candidate_scores(config, boosted, score_rng);

  Rng rel_rng = substream(config.seed, kStreamRelevance);
  u.relevance = gen_relevance_synthetic(u.candidate_scores, rel_rng);
  u.truth = u.relevance;  // synthetic ground truth is the relevance itself

  u.sets.resize(config.n_users);
  for (int user = 0; user < config.n_users; ++user) {
    Rng set_rng = substream(config.seed, kStreamCandidateSets,
                            static_cast<std::uint64_t>(user));
    CandidateSet& cs = u.sets[user];
    cs.user = user;
    cs.items = sample_candidate_set(u.candidate_scores, config.k, set_rng);
    cs.scores.resize(cs.items.size());
    for (std::size_t i = 0; i < cs.items.size(); ++i) {
      cs.scores[i] = u.relevance[cs.items[i]];
    }
  }
  finalize_universe(u);
  return u;
}

}  // namespace icfw

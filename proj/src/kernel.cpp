#include "icfw/kernel.hpp"

#include <algorithm>
#include <stdexcept>

#include "icfw/ranking.hpp"
#include "icfw/rng.hpp"

namespace icfw {

namespace {

// Ranks one user's candidate set and bumps the first ell slots.
inline void impress_user(const RankingPolicy& policy, const Universe& universe,
                         int user, std::uint64_t seed, std::uint64_t grid_index,
                         int trial, std::vector<std::uint32_t>& counts) {
  const CandidateSet& cs = universe.sets[user];
  std::vector<long long> freqs(cs.items.size());
  for (std::size_t i = 0; i < cs.items.size(); ++i) {
    freqs[i] = universe.item_freq[cs.items[i]];
  }
  Rng rng = substream(seed, kStreamTrial, grid_index,
                      static_cast<std::uint64_t>(trial),
                      static_cast<std::uint64_t>(user));
  // one ranking request per user, so the batch holds n_users candidate sets
  const Ranking order = rank_with_policy(
      policy, cs, freqs, static_cast<double>(universe.n_users()), rng);
  const int ell = std::min<int>(universe.config.ell,
                                static_cast<int>(cs.items.size()));
  for (int j = 0; j < ell; ++j) {
    ++counts[cs.items[order[j]]];
  }
}

}  // namespace

std::vector<std::uint32_t> simulate_trial_serial(const RankingPolicy& policy,
                                                 const Universe& universe,
                                                 std::uint64_t seed,
                                                 std::uint64_t grid_index,
                                                 int trial) {
  std::vector<std::uint32_t> counts(universe.m_items(), 0);
  const int n = universe.n_users();
  for (int u = 0; u < n; ++u) {
    impress_user(policy, universe, u, seed, grid_index, trial, counts);
  }
  return counts;
}

std::vector<std::uint32_t> simulate_trial_parallel(const RankingPolicy& policy,
                                                   const Universe& universe,
                                                   std::uint64_t seed,
                                                   std::uint64_t grid_index,
                                                   int trial) {
  const int m = universe.m_items();
  const int n = universe.n_users();
  std::vector<std::uint32_t> counts(m, 0);
#pragma omp parallel
  {
    std::vector<std::uint32_t> local(m, 0);
#pragma omp for schedule(static) nowait
    for (int u = 0; u < n; ++u) {
      impress_user(policy, universe, u, seed, grid_index, trial, local);
    }
#pragma omp critical(icfw_trial_reduce)
    for (int v = 0; v < m; ++v) counts[v] += local[v];
  }
  return counts;
}

}  // namespace icfw

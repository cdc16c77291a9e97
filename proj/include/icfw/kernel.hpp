#pragma once

#include <cstdint>
#include <vector>

#include "icfw/metrics.hpp"
#include "icfw/universe.hpp"

namespace icfw {

/// One full simulation pass: every user draws one ranking under the
/// policy and the first ell slots impress. Returns per-item impression
/// counts. Each user's draw comes from substream(seed, kStreamTrial,
/// grid_index, trial, user), so the result is independent of thread
/// count and iteration order.
///
/// simulate_trial_serial is the reference implementation;
/// simulate_trial_parallel is the OpenMP kernel. Both return identical
/// counts (integer accumulation commutes).
std::vector<std::uint32_t> simulate_trial_serial(const RankingPolicy& policy,
                                                 const Universe& universe,
                                                 std::uint64_t seed,
                                                 std::uint64_t grid_index,
                                                 int trial);

std::vector<std::uint32_t> simulate_trial_parallel(const RankingPolicy& policy,
                                                   const Universe& universe,
                                                   std::uint64_t seed,
                                                   std::uint64_t grid_index,
                                                   int trial);

inline std::vector<std::uint32_t> simulate_trial(const RankingPolicy& policy,
                                                 const Universe& universe,
                                                 std::uint64_t seed,
                                                 std::uint64_t grid_index,
                                                 int trial, ExecMode mode) {
  return mode == ExecMode::Serial
             ? simulate_trial_serial(policy, universe, seed, grid_index, trial)
             : simulate_trial_parallel(policy, universe, seed, grid_index,
                                       trial);
}

}  // namespace icfw

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "icfw/types.hpp"
#include "icfw/universe.hpp"

namespace icfw {

/// Per-item impression counts (expected or realized). counts is indexed
/// by ItemId over all m items; items never shown hold 0. For a realized
/// full pass, total = n_users * ell.
struct ImpressionLedger {
  std::vector<double> counts;
  double total = 0.0;

  static ImpressionLedger from_counts(std::vector<double> c);
};

enum class ExecMode { Serial, Parallel };

/// Percent of all impressions captured by the top ceil(1% of m_items)
/// items. Equal counts give the floor 100 * ceil(.01 m) / m.
double t1ps(const ImpressionLedger& ledger, int m_items);

/// Sum of ground-truth relevance over every viewed slot, divided by the
/// number of requesting users. Repeat views all contribute.
double content_quality(const std::vector<ViewedPrefix>& viewed,
                       std::span<const double> truth, int n_users);

/// Same metric computed from an impression ledger.
double content_quality(const ImpressionLedger& ledger,
                       std::span<const double> truth, int n_users);

/// Gini coefficient of the count vector over all items, zero-count items
/// included. Sorted-ranks formula.
double gini(const ImpressionLedger& ledger);

/// Monte Carlo estimate of per-item expected top-ell impressions:
/// average of n_trials full passes (one sampled ranking per user). The
/// deterministic policy needs a single pass. Serial and parallel modes
/// return identical ledgers.
ImpressionLedger expected_impressions(const RankingPolicy& policy,
                                      const Universe& universe, int n_trials,
                                      std::uint64_t seed,
                                      ExecMode mode = ExecMode::Serial);

/// Closed form for the Randomized policy: an item appearing in s sets of
/// size k expects s * ell / k impressions. Oracle for the Monte Carlo path.
ImpressionLedger randomized_closed_form(const Universe& universe);

/// Exhaustive equal-exposure check under the k-subset selection view
/// model: is there a choice of one k-subset per consumer giving every
/// producer identical exposure? Capacity-limited to instances with at
/// most 1e7 subset combinations.
struct FeasibilityResult {
  bool feasible = false;
  std::vector<std::vector<ItemId>> witness;  // one selection per consumer
};
FeasibilityResult equal_exposure_feasible(
    const std::vector<std::vector<ItemId>>& candidate_sets, int k);

}  // namespace icfw

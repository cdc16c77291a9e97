#include "icfw/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "icfw/kernel.hpp"

namespace icfw {

ImpressionLedger ImpressionLedger::from_counts(std::vector<double> c) {
  ImpressionLedger ledger;
  ledger.total = std::accumulate(c.begin(), c.end(), 0.0);
  ledger.counts = std::move(c);
  return ledger;
}

double t1ps(const ImpressionLedger& ledger, int m_items) {
  if (!(ledger.total > 0.0)) {
    throw std::invalid_argument("t1ps: undefined for zero total impressions");
  }
  if (static_cast<int>(ledger.counts.size()) != m_items) {
    throw std::invalid_argument("t1ps: ledger does not cover m_items");
  }
  const int t = static_cast<int>(std::ceil(0.01 * m_items));
  std::vector<double> sorted = ledger.counts;
  std::nth_element(sorted.begin(), sorted.begin() + t, sorted.end(),
                   std::greater<>());
  const double top = std::accumulate(sorted.begin(), sorted.begin() + t, 0.0);
  return 100.0 * top / ledger.total;
}

double content_quality(const std::vector<ViewedPrefix>& viewed,
                       std::span<const double> truth, int n_users) {
  if (n_users <= 0) {
    throw std::invalid_argument("content_quality: n_users must be positive");
  }
  double sum = 0.0;
  for (const auto& prefix : viewed) {
    for (ItemId v : prefix.items) {
      if (v < 0 || static_cast<std::size_t>(v) >= truth.size()) {
        throw std::invalid_argument(
            "content_quality: viewed item has no truth value");
      }
      sum += truth[v];
    }
  }
  return sum / n_users;
}

double content_quality(const ImpressionLedger& ledger,
                       std::span<const double> truth, int n_users) {
  if (n_users <= 0) {
    throw std::invalid_argument("content_quality: n_users must be positive");
  }
  if (ledger.counts.size() != truth.size()) {
    throw std::invalid_argument("content_quality: ledger/truth size mismatch");
  }
  double sum = 0.0;
  for (std::size_t v = 0; v < truth.size(); ++v) {
    sum += ledger.counts[v] * truth[v];
  }
  return sum / n_users;
}

double gini(const ImpressionLedger& ledger) {
  if (!(ledger.total > 0.0)) {
    throw std::invalid_argument("gini: undefined for zero total impressions");
  }
  std::vector<double> x = ledger.counts;
  std::sort(x.begin(), x.end());
  const double m = static_cast<double>(x.size());
  double weighted = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    weighted += static_cast<double>(i + 1) * x[i];
  }
  return 2.0 * weighted / (m * ledger.total) - (m + 1.0) / m;
}

ImpressionLedger expected_impressions(const RankingPolicy& policy,
                                      const Universe& universe, int n_trials,
                                      std::uint64_t seed, ExecMode mode) {
  const bool deterministic = policy.kind == PolicyKind::Deterministic;
  const int trials = deterministic ? 1 : n_trials;
  if (trials < 1) {
    throw std::invalid_argument("expected_impressions: n_trials must be >= 1");
  }
  std::vector<std::uint64_t> acc(universe.m_items(), 0);
  for (int t = 0; t < trials; ++t) {
    const auto counts = simulate_trial(policy, universe, seed, 0, t, mode);
    for (std::size_t v = 0; v < counts.size(); ++v) acc[v] += counts[v];
  }
  std::vector<double> mean(acc.size());
  for (std::size_t v = 0; v < acc.size(); ++v) {
    mean[v] = static_cast<double>(acc[v]) / trials;
  }
  return ImpressionLedger::from_counts(std::move(mean));
}

ImpressionLedger randomized_closed_form(const Universe& universe) {
  std::vector<double> counts(universe.m_items(), 0.0);
  for (const auto& cs : universe.sets) {
    const double per_item =
        static_cast<double>(std::min<int>(universe.config.ell,
                                          static_cast<int>(cs.items.size()))) /
        static_cast<double>(cs.items.size());
    for (ItemId v : cs.items) counts[v] += per_item;
  }
  return ImpressionLedger::from_counts(std::move(counts));
}

namespace {

// All k-subsets of one candidate set, lexicographic by position.
std::vector<std::vector<ItemId>> k_subsets(const std::vector<ItemId>& set,
                                           int k) {
  std::vector<std::vector<ItemId>> out;
  const int n = static_cast<int>(set.size());
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<ItemId> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = set[idx[i]];
    out.push_back(std::move(subset));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

FeasibilityResult equal_exposure_feasible(
    const std::vector<std::vector<ItemId>>& candidate_sets, int k) {
  if (candidate_sets.empty() || k <= 0) {
    throw std::invalid_argument("equal_exposure_feasible: empty instance");
  }
  // Size the search before materializing anything, so oversized instances
  // are rejected without allocating their subset lists.
  double combos = 1.0;
  for (const auto& set : candidate_sets) {
    if (static_cast<int>(set.size()) < k) {
      throw std::invalid_argument(
          "equal_exposure_feasible: candidate set smaller than k");
    }
    double binom = 1.0;
    for (int i = 0; i < k; ++i) {
      binom *= static_cast<double>(set.size() - i) / (i + 1);
    }
    combos *= binom;
    if (combos > 1e7) {
      throw capacity_error("equal_exposure_feasible: instance too large");
    }
  }
  std::vector<std::vector<std::vector<ItemId>>> choices;
  choices.reserve(candidate_sets.size());
  for (const auto& set : candidate_sets) {
    choices.push_back(k_subsets(set, k));
  }

  std::unordered_map<ItemId, long long> exposure;
  for (const auto& set : candidate_sets) {
    for (ItemId v : set) exposure.emplace(v, 0);
  }

  FeasibilityResult result;
  std::vector<const std::vector<ItemId>*> picked(candidate_sets.size());
  std::function<bool(std::size_t)> dfs = [&](std::size_t consumer) -> bool {
    if (consumer == choices.size()) {
      long long first = exposure.begin()->second;
      for (const auto& [v, e] : exposure) {
        if (e != first) return false;
      }
      return true;
    }
    for (const auto& subset : choices[consumer]) {
      for (ItemId v : subset) ++exposure[v];
      picked[consumer] = &subset;
      if (dfs(consumer + 1)) return true;
      for (ItemId v : subset) --exposure[v];
    }
    return false;
  };

  result.feasible = dfs(0);
  if (result.feasible) {
    for (const auto* subset : picked) result.witness.push_back(*subset);
  }
  return result;
}

}  // namespace icfw

#include "icfw/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace icfw {

namespace {

constexpr double kWeightFloor = 1e-300;

void check_weights(std::span<const double> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("sample_ranking: empty weight vector");
  }
  for (double w : weights) {
    if (!std::isfinite(w) || w < kWeightFloor) {
      throw std::invalid_argument(
          "sample_ranking: weights must be positive and finite");
    }
  }
}

double logaddexp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

std::string RankingPolicy::name() const {
  switch (kind) {
    case PolicyKind::Deterministic:
      return "deterministic";
    case PolicyKind::Randomized:
      return "randomized";
    case PolicyKind::ScaledPL:
      return "scaled_pl";
    case PolicyKind::InverseWeighted:
      return "inverse_weighted";
    case PolicyKind::PLICFW:
      return "pl_icfw";
  }
  return "?";
}

Ranking deterministic_rank(std::span<const double> scores) {
  if (scores.empty()) {
    throw std::invalid_argument("deterministic_rank: empty score sequence");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("deterministic_rank: non-finite score");
    }
  }
  Ranking order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  return order;
}

std::vector<double> scaled_pl_weights(std::span<const double> scores,
                                      double c) {
  if (!std::isfinite(c) || c < 0.0) {
    throw std::invalid_argument("scaled_pl_weights: c must be finite and >= 0");
  }
  double shift = -std::numeric_limits<double>::infinity();
  for (double r : scores) shift = std::max(shift, c * r);
  if (scores.empty()) return {};
  std::vector<double> w(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    w[i] = std::exp(c * scores[i] - shift);
  }
  return w;
}

std::vector<double> icfw_weights(std::span<const double> scores,
                                 std::span<const long long> freqs,
                                 double alpha, double beta,
                                 double total_sets) {
  if (scores.size() != freqs.size()) {
    throw std::invalid_argument("icfw_weights: scores/freqs size mismatch");
  }
  if (!std::isfinite(alpha) || alpha < 0.0 || !std::isfinite(beta) ||
      beta < 0.0) {
    throw std::invalid_argument("icfw_weights: alpha, beta must be >= 0");
  }
  if (!std::isfinite(total_sets) || total_sets <= 0.0) {
    throw std::invalid_argument("icfw_weights: total_sets must be > 0");
  }
  for (long long f : freqs) {
    if (f < 0 || (alpha == 0.0 && f == 0)) {
      throw std::invalid_argument(
          "icfw_weights: every candidate needs W >= 1 when alpha = 0");
    }
  }
  double shift = 0.0;  // keeps the alpha = 0 path exactly total_sets / W
  if (alpha > 0.0) {
    for (double r : scores) shift = std::max(shift, beta * r);
  }
  const double scale = std::exp(-shift);
  std::vector<double> w(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    w[i] = alpha * std::exp(beta * scores[i] - shift) +
           scale / (static_cast<double>(freqs[i]) / total_sets + alpha);
  }
  return w;
}

std::vector<double> icfw_log_weights(std::span<const double> scores,
                                     std::span<const long long> freqs,
                                     double alpha, double beta,
                                     double total_sets) {
  if (scores.size() != freqs.size()) {
    throw std::invalid_argument("icfw_log_weights: size mismatch");
  }
  if (!std::isfinite(total_sets) || total_sets <= 0.0) {
    throw std::invalid_argument("icfw_log_weights: total_sets must be > 0");
  }
  std::vector<double> lw(scores.size());
  const double log_alpha = alpha > 0.0
                               ? std::log(alpha)
                               : -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (alpha == 0.0 && freqs[i] == 0) {
      throw std::invalid_argument(
          "icfw_log_weights: W = 0 with alpha = 0");
    }
    const double inv_term =
        -std::log(static_cast<double>(freqs[i]) / total_sets + alpha);
    lw[i] = alpha > 0.0 ? logaddexp(log_alpha + beta * scores[i], inv_term)
                        : inv_term;
  }
  return lw;
}

Ranking sample_ranking_log(std::span<const double> log_weights, Rng& rng) {
  if (log_weights.empty()) {
    throw std::invalid_argument("sample_ranking: empty weight vector");
  }
  const std::size_t n = log_weights.size();
  std::vector<double> key(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(log_weights[i])) {
      throw std::invalid_argument("sample_ranking: non-finite log-weight");
    }
    const double e = -std::log(rng.uniform_open01());  // Exp(1)
    key[i] = std::log(e) - log_weights[i];
  }
  Ranking order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (key[a] != key[b]) return key[a] < key[b];
    return a < b;
  });
  return order;
}

Ranking sample_ranking(std::span<const double> weights, Rng& rng) {
  check_weights(weights);
  std::vector<double> lw(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) lw[i] = std::log(weights[i]);
  return sample_ranking_log(lw, rng);
}

double exact_pl_probability(std::span<const double> weights,
                            const Ranking& ranking) {
  check_weights(weights);
  const std::size_t n = weights.size();
  if (ranking.size() != n) {
    throw std::invalid_argument("exact_pl_probability: length mismatch");
  }
  std::vector<char> seen(n, 0);
  for (int idx : ranking) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= n || seen[idx]) {
      throw std::invalid_argument("exact_pl_probability: not a permutation");
    }
    seen[idx] = 1;
  }
  double remaining = 0.0;
  for (double w : weights) remaining += w;
  double p = 1.0;
  for (int idx : ranking) {
    p *= weights[idx] / remaining;
    remaining -= weights[idx];
  }
  return p;
}

Ranking rank_with_policy(const RankingPolicy& policy,
                         const CandidateSet& candidate_set,
                         std::span<const long long> freqs, double total_sets,
                         Rng& rng) {
  const auto& scores = candidate_set.scores;
  if (scores.empty()) {
    throw std::invalid_argument("rank_with_policy: empty candidate set");
  }
  switch (policy.kind) {
    case PolicyKind::Deterministic:
      return deterministic_rank(scores);
    case PolicyKind::Randomized: {
      std::vector<double> lw(scores.size(), 0.0);
      return sample_ranking_log(lw, rng);
    }
    case PolicyKind::ScaledPL: {
      std::vector<double> lw(scores.size());
      for (std::size_t i = 0; i < scores.size(); ++i) {
        lw[i] = policy.c * scores[i];
      }
      return sample_ranking_log(lw, rng);
    }
    case PolicyKind::InverseWeighted:
      return sample_ranking_log(
          icfw_log_weights(scores, freqs, 0.0, 0.0, total_sets), rng);
    case PolicyKind::PLICFW:
      return sample_ranking_log(
          icfw_log_weights(scores, freqs, policy.alpha, policy.beta,
                           total_sets),
          rng);
  }
  throw std::logic_error("rank_with_policy: unknown policy kind");
}

}  // namespace icfw

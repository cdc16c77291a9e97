#pragma once

#include <span>
#include <vector>

#include "icfw/rng.hpp"
#include "icfw/types.hpp"

namespace icfw {

/// Sorts candidates by non-increasing relevance; ties broken by ascending
/// original index.
Ranking deterministic_rank(std::span<const double> scores);

/// Plackett-Luce weights exp(c * r_i), shifted by max(c * r) before
/// exponentiation. Shifting rescales every weight by a common factor and
/// leaves the PL distribution unchanged. c = 0 gives all-equal weights.
std::vector<double> scaled_pl_weights(std::span<const double> scores, double c);

/// Weights alpha * exp(beta * r_i) + 1 / (W_i / total_sets + alpha).
/// The candidate frequency enters as the fraction of candidate sets the
/// item appears in, so the inverse-frequency term is O(1) or larger and
/// alpha interpolates on a batch-size-independent scale. Pass
/// total_sets = 1 when freqs already hold relative frequencies. Both
/// terms are rescaled by exp(-max(beta * r)) so relative weights are
/// preserved without overflow. alpha = beta = 0 reduces exactly to
/// total_sets / W_i; that case requires W_i >= 1.
std::vector<double> icfw_weights(std::span<const double> scores,
                                 std::span<const long long> freqs,
                                 double alpha, double beta,
                                 double total_sets);

/// log of the unshifted ICFW weight: logaddexp(log(alpha) + beta * r_i,
/// -log(W_i / total_sets + alpha)). Safe for arbitrarily large beta * r;
/// used on the sampling hot path.
std::vector<double> icfw_log_weights(std::span<const double> scores,
                                     std::span<const long long> freqs,
                                     double alpha, double beta,
                                     double total_sets);

/// One Plackett-Luce draw via exponential keys (key_i = u_i^(1/w_i), u_i
/// uniform on (0,1), sorted descending). O(N log N). Weights must be
/// strictly positive and finite; anything below 1e-300 is rejected.
Ranking sample_ranking(std::span<const double> weights, Rng& rng);

/// Same draw computed from log-weights: with e_i = -log(u_i) ~ Exp(1),
/// sorting log(e_i) - log(w_i) ascending orders identically to u_i^(1/w_i)
/// descending, so this matches sample_ranking draw-for-draw whenever the
/// linear-domain weights are representable.
Ranking sample_ranking_log(std::span<const double> log_weights, Rng& rng);

/// Probability that the PL distribution with these weights emits exactly
/// this ranking: product over positions j of w_{sigma(j)} / sum of weights
/// of items not yet placed. Brute-force oracle for small instances.
double exact_pl_probability(std::span<const double> weights,
                            const Ranking& ranking);

/// Dispatches to the policy's weight family and sampler. freqs holds
/// W_v for each candidate, parallel to candidate_set.items, out of
/// total_sets candidate sets in the batch; both are ignored by
/// Deterministic, Randomized and ScaledPL.
Ranking rank_with_policy(const RankingPolicy& policy,
                         const CandidateSet& candidate_set,
                         std::span<const long long> freqs, double total_sets,
                         Rng& rng);

}  // namespace icfw

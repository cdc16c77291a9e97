#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace icfw {

using ItemId = std::int32_t;   // producer / ranked item
using UserId = std::int32_t;   // consumer / ranking requester
using GroupId = std::int32_t;

/// Permutation of candidate-set indices. order[0] is the most prominent
/// position.
using Ranking = std::vector<int>;

// CLI exit-code families.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class PolicyKind {
  Deterministic,
  Randomized,
  ScaledPL,
  InverseWeighted,
  PLICFW,
};

/// Tagged ranking policy. ScaledPL carries c; PLICFW carries alpha/beta.
/// PLICFW(0,0) is semantically Inverse Weighted, ScaledPL(0) is Randomized.
struct RankingPolicy {
  PolicyKind kind = PolicyKind::Deterministic;
  double c = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  static RankingPolicy deterministic() { return {PolicyKind::Deterministic}; }
  static RankingPolicy randomized() { return {PolicyKind::Randomized}; }
  static RankingPolicy scaled_pl(double c_) {
    return {PolicyKind::ScaledPL, c_};
  }
  static RankingPolicy inverse_weighted() {
    return {PolicyKind::InverseWeighted};
  }
  static RankingPolicy pl_icfw(double alpha_, double beta_) {
    RankingPolicy p{PolicyKind::PLICFW};
    p.alpha = alpha_;
    p.beta = beta_;
    return p;
  }

  std::string name() const;
};

/// Stage-one output for one user: candidate items plus parallel relevance
/// scores. Items are distinct; the stored order carries no meaning for
/// any policy.
struct CandidateSet {
  UserId user = 0;
  std::vector<ItemId> items;
  std::vector<double> scores;
};

/// First ell entries of one user's sampled ranking, resolved to item ids.
struct ViewedPrefix {
  UserId user = 0;
  std::vector<ItemId> items;
};

}  // namespace icfw

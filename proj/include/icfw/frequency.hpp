#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "icfw/types.hpp"

namespace icfw {

/// Candidate-appearance counts over one batch of candidate sets. W_v is
/// the number of sets item v appears in; items in no set are absent.
/// Optionally carries the group extension W_g. Immutable once built;
/// freely shared across concurrent ranking calls.
struct FrequencyTable {
  std::unordered_map<ItemId, long long> counts;
  std::unordered_map<GroupId, long long> group_counts;
  std::unordered_map<ItemId, GroupId> group_of;

  long long count_of(ItemId v) const {
    auto it = counts.find(v);
    return it == counts.end() ? 0 : it->second;
  }
};

/// Counts how many candidate sets each item appears in. Rejects a
/// duplicate item inside a single set.
FrequencyTable candidate_frequencies(const std::vector<CandidateSet>& sets);

/// Adds group counts: group_counts[g] = sum of counts over members of g.
/// group_of must cover every item in the table.
FrequencyTable group_frequencies(
    const FrequencyTable& table,
    const std::unordered_map<ItemId, GroupId>& group_of);

/// Densifies W_v into a vector indexed by ItemId in [0, m_items).
std::vector<long long> dense_frequencies(const FrequencyTable& table,
                                         int m_items);

}  // namespace icfw

#include "icfw/frequency.hpp"

#include <stdexcept>
#include <string>
#include <unordered_set>

namespace icfw {

FrequencyTable candidate_frequencies(const std::vector<CandidateSet>& sets) {
  FrequencyTable table;
  std::unordered_set<ItemId> in_set;
  for (const auto& cs : sets) {
    in_set.clear();
    for (ItemId v : cs.items) {
      if (!in_set.insert(v).second) {
        throw std::invalid_argument(
            "candidate_frequencies: duplicate item " + std::to_string(v) +
            " in candidate set of user " + std::to_string(cs.user));
      }
      ++table.counts[v];
    }
  }
  return table;
}

FrequencyTable group_frequencies(
    const FrequencyTable& table,
    const std::unordered_map<ItemId, GroupId>& group_of) {
  FrequencyTable out = table;
  out.group_counts.clear();
  out.group_of = group_of;
  for (const auto& [item, count] : table.counts) {
    auto it = group_of.find(item);
    if (it == group_of.end()) {
      throw std::invalid_argument("group_frequencies: item " +
                                  std::to_string(item) + " has no group");
    }
    out.group_counts[it->second] += count;
  }
  return out;
}

std::vector<long long> dense_frequencies(const FrequencyTable& table,
                                         int m_items) {
  std::vector<long long> freq(m_items, 0);
  for (const auto& [item, count] : table.counts) {
    if (item < 0 || item >= m_items) {
      throw std::invalid_argument("dense_frequencies: item id out of range");
    }
    freq[item] = count;
  }
  return freq;
}

}  // namespace icfw

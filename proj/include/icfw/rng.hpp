#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace icfw {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Pseudorandom stream (splitmix64 counter). Every stochastic operation
/// takes one of these explicitly; nothing in the library owns global RNG
/// state. Satisfies UniformRandomBitGenerator, so standard distributions
/// can draw from it directly. Construction is a single word, cheap enough
/// to build one stream per ranking request.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return splitmix64(state_++); }

  std::uint64_t next_u64() { return (*this)(); }

  /// Uniform on the open interval (0,1). Never returns 0 or 1, so
  /// log(u) is always finite.
  double uniform_open01() {
    const std::uint64_t r = (*this)();
    return (static_cast<double>(r >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  double normal() { return normal_(*this); }

  Rng& engine() { return *this; }

 private:
  std::uint64_t state_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Derives an independent substream from a seed and a tuple of ids
/// (experiment tag, grid index, trial, user, ...). Streams for distinct
/// id tuples are decorrelated by hash-chaining, so per-user work can run
/// on any thread in any order and still draw identical values.
template <typename... Ids>
Rng substream(std::uint64_t seed, Ids... ids) {
  std::uint64_t s = splitmix64(seed);
  ((s = splitmix64(s ^ static_cast<std::uint64_t>(ids))), ...);
  return Rng(s);
}

// Stream tags keeping the substream id spaces disjoint.
inline constexpr std::uint64_t kStreamCandidateScores = 0xC5C01ULL;
inline constexpr std::uint64_t kStreamRelevance = 0xE1E01ULL;
inline constexpr std::uint64_t kStreamCandidateSets = 0x5E7501ULL;
inline constexpr std::uint64_t kStreamTrial = 0x7A1A1ULL;
inline constexpr std::uint64_t kStreamGermanSelect = 0x6E5E1ULL;

}  // namespace icfw

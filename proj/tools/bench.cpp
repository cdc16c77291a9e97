// Compares the serial reference kernel against the OpenMP kernel on the
// synthetic universe and checks that both produce identical ledgers.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "icfw/kernel.hpp"
#include "icfw/universe.hpp"

using namespace icfw;

namespace {

double time_trials(const RankingPolicy& policy, const Universe& universe,
                   int trials, ExecMode mode) {
  const auto start = std::chrono::steady_clock::now();
  for (int t = 0; t < trials; ++t) {
    auto counts = simulate_trial(policy, universe, universe.config.seed, 0, t,
                                 mode);
    (void)counts;
  }
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  int trials = 20;
  if (argc > 1) trials = std::atoi(argv[1]);

  ExperimentConfig cfg = ExperimentConfig::synthetic_defaults();
  const Universe universe = build_synthetic_universe(cfg);
  const RankingPolicy policy = RankingPolicy::pl_icfw(0.5, 0.5);

  // warm-up + equality check
  bool equal = true;
  for (int t = 0; t < 3; ++t) {
    const auto a =
        simulate_trial_serial(policy, universe, cfg.seed, 0, t);
    const auto b =
        simulate_trial_parallel(policy, universe, cfg.seed, 0, t);
    if (a != b) equal = false;
  }
  std::printf("serial/parallel ledgers identical: %s\n",
              equal ? "yes" : "NO");

  const double serial_ms =
      time_trials(policy, universe, trials, ExecMode::Serial);
  const double parallel_ms =
      time_trials(policy, universe, trials, ExecMode::Parallel);
  std::printf("trials: %d  users/trial: %d\n", trials, universe.n_users());
  std::printf("serial:   %8.1f ms  (%.2f ms/trial)\n", serial_ms,
              serial_ms / trials);
  std::printf("parallel: %8.1f ms  (%.2f ms/trial)\n", parallel_ms,
              parallel_ms / trials);
  std::printf("speedup:  %.2fx\n", serial_ms / parallel_ms);
  return equal ? 0 : 1;
}

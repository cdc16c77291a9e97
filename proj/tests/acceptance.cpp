// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "icfw/experiment.hpp"
#include "icfw/german.hpp"
#include "icfw/kernel.hpp"
#include "icfw/metrics.hpp"
#include "icfw/ranking.hpp"
#include "icfw/rng.hpp"

using namespace icfw;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& what, bool ok,
               const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", id,
              what.c_str(), detail.empty() ? "" : " -- ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::vector<Ranking> all_permutations(int n) {
  Ranking perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Ranking> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::string german_data_path() {
  if (const char* env = std::getenv("ICFW_GERMAN_DATA")) return env;
  return std::string(ICFW_DATA_DIR) + "/german_surrogate.data";
}

// ---------------------------------------------------------------- 1
void check_toy() {
  const auto start = std::chrono::steady_clock::now();
  const ToyResult r = toy_demo(100000, 1);
  const double elapsed = seconds_since(start);
  bool det_ok = true;
  for (double d : r.deterministic) det_ok = det_ok && d == 1.0;
  const bool j_ok = std::abs(r.randomized_mc[9] - 2.5) <= 0.03;
  const bool closed_ok = r.randomized_closed[9] == 2.5;
  std::ostringstream detail;
  detail << "J mc=" << r.randomized_mc[9] << " closed="
         << r.randomized_closed[9] << " elapsed=" << elapsed << "s";
  criterion(1, "toy paradox", det_ok && j_ok && closed_ok && elapsed < 1.0,
            detail.str());
}

// ---------------------------------------------------------------- 2
void check_sampler() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng = substream(2024, 0xACC, 2);
  bool tv_ok = true, norm_ok = true;
  double worst_tv = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 4);  // 2..5
    std::vector<double> w(n);
    // lognormal with a wide spread: at 1e5 draws the Monte Carlo noise
    // floor on TV for a near-uniform size-5 vector is ~0.014, above the
    // bound, so near-uniform vectors cannot distinguish sampler error
    // from noise; a spread law keeps the floor below the bound while
    // still failing for any biased sampler
    for (double& x : w) x = std::exp(2.5 * rng.normal());
    const auto perms = all_permutations(n);

    double norm = 0.0;
    for (const auto& p : perms) norm += exact_pl_probability(w, p);
    norm_ok = norm_ok && std::abs(norm - 1.0) < 1e-9;

    std::map<Ranking, int> histogram;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ++histogram[sample_ranking(w, rng)];
    double tv = 0.0;
    for (const auto& p : perms) {
      const auto it = histogram.find(p);
      const double phat =
          it == histogram.end() ? 0.0
                                : static_cast<double>(it->second) / draws;
      tv += std::abs(exact_pl_probability(w, p) - phat);
    }
    tv /= 2.0;
    worst_tv = std::max(worst_tv, tv);
    tv_ok = tv_ok && tv < 0.01;
  }
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "worst TV=" << worst_tv << " elapsed=" << elapsed << "s";
  criterion(2, "sampler correctness",
            tv_ok && norm_ok && elapsed < 30.0, detail.str());
}

// ---------------------------------------------------------------- 3
void check_endpoints() {
  ExperimentConfig cfg = ExperimentConfig::synthetic_defaults();
  cfg.seed = 2024;
  const Universe u = build_synthetic_universe(cfg);

  // PLICFW(0,0) vs InverseWeighted: identical rankings, trial for trial
  bool exact_ok = true;
  for (int t = 0; t < 2; ++t) {
    exact_ok = exact_ok &&
               simulate_trial_serial(RankingPolicy::pl_icfw(0.0, 0.0), u,
                                     cfg.seed, 3, t) ==
                   simulate_trial_serial(RankingPolicy::inverse_weighted(), u,
                                         cfg.seed, 3, t);
  }

  // ScaledPL(0) vs Randomized within 3 standard errors
  const int trials = 10;
  const ResultRow a =
      run_experiment(u, RankingPolicy::scaled_pl(0.0), trials, 101);
  const ResultRow b =
      run_experiment(u, RankingPolicy::randomized(), trials, 102);
  auto se = [&](const ResultRow& r, auto metric) {
    double mean = 0.0, var = 0.0;
    for (const auto& t : r.per_trial) mean += metric(t) / trials;
    for (const auto& t : r.per_trial) {
      var += (metric(t) - mean) * (metric(t) - mean) / (trials - 1);
    }
    return std::sqrt(var / trials);
  };
  auto t1 = [](const TrialMetrics& m) { return m.t1ps_pct; };
  auto cq = [](const TrialMetrics& m) { return m.content_quality; };
  const double dt1 = std::abs(a.mean.t1ps_pct - b.mean.t1ps_pct);
  const double dcq = std::abs(a.mean.content_quality - b.mean.content_quality);
  const bool mc_ok =
      dt1 <= 3.0 * std::hypot(se(a, t1), se(b, t1)) + 1e-9 &&
      dcq <= 3.0 * std::hypot(se(a, cq), se(b, cq)) + 1e-9;

  std::ostringstream detail;
  detail << "t1ps gap=" << dt1 << " cq gap=" << dcq;
  criterion(3, "endpoint collapse", exact_ok && mc_ok, detail.str());
}

// helper for criteria 4 and 5
struct SweepSummary {
  double randomized_t1ps = 0.0;
  double det_cq = 0.0;
  double max_other_cq = 0.0;
  double scaledpl_min_t1ps = 1e9;
  double scaledpl_cq_at_min = 0.0;
  double plicfw_eq_min_t1ps = 1e9;
  double plicfw_any_min_t1ps = 1e9;
  double baseline_min_t1ps = 1e9;  // det, rand, scaledpl
  bool plicfw_low_t1ps_good_cq = false;
  double low_cq_threshold = 0.0;
};

SweepSummary summarize(const std::vector<ResultRow>& rows, double t1ps_cap,
                       double cq_slack) {
  SweepSummary s;
  for (const auto& row : rows) {
    const double t1 = row.mean.t1ps_pct;
    const double cq = row.mean.content_quality;
    switch (row.policy.kind) {
      case PolicyKind::Deterministic:
        s.det_cq = cq;
        s.baseline_min_t1ps = std::min(s.baseline_min_t1ps, t1);
        break;
      case PolicyKind::Randomized:
        s.randomized_t1ps = t1;
        s.max_other_cq = std::max(s.max_other_cq, cq);
        s.baseline_min_t1ps = std::min(s.baseline_min_t1ps, t1);
        break;
      case PolicyKind::ScaledPL:
        if (t1 < s.scaledpl_min_t1ps) {
          s.scaledpl_min_t1ps = t1;
          s.scaledpl_cq_at_min = cq;
        }
        s.max_other_cq = std::max(s.max_other_cq, cq);
        s.baseline_min_t1ps = std::min(s.baseline_min_t1ps, t1);
        break;
      case PolicyKind::InverseWeighted:
        s.max_other_cq = std::max(s.max_other_cq, cq);
        break;
      case PolicyKind::PLICFW:
        if (row.policy.beta == row.policy.alpha) {
          s.plicfw_eq_min_t1ps = std::min(s.plicfw_eq_min_t1ps, t1);
        }
        s.plicfw_any_min_t1ps = std::min(s.plicfw_any_min_t1ps, t1);
        s.max_other_cq = std::max(s.max_other_cq, cq);
        break;
    }
  }
  // second pass: PL-ICFW point with low T1PS and content quality close to
  // Scaled PL's value at its own minimum
  s.low_cq_threshold = s.scaledpl_cq_at_min - cq_slack;
  for (const auto& row : rows) {
    if (row.policy.kind == PolicyKind::PLICFW &&
        row.mean.t1ps_pct < t1ps_cap &&
        row.mean.content_quality >= s.low_cq_threshold) {
      s.plicfw_low_t1ps_good_cq = true;
    }
  }
  return s;
}

// ---------------------------------------------------------------- 4
void check_synthetic() {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig cfg = ExperimentConfig::synthetic_defaults();
  cfg.seed = 2024;
  const Universe u = build_synthetic_universe(cfg);
  const SweepSpec spec = SweepSpec::defaults("synthetic");
  std::ostringstream devnull;
  const auto rows = sweep(u, spec, devnull, ExecMode::Parallel);
  const SweepSummary s = summarize(rows, 3.5, 0.3);
  const double elapsed = seconds_since(start);

  const bool rand_ok = s.randomized_t1ps > 20.0;
  const bool det_ok = s.det_cq > s.max_other_cq;
  const bool scaled_ok =
      s.scaledpl_min_t1ps >= 4.0 && s.scaledpl_min_t1ps <= 9.0;
  const bool icfw_ok =
      s.plicfw_eq_min_t1ps >= 1.2 && s.plicfw_eq_min_t1ps <= 3.5;
  const bool gap_ok = s.plicfw_eq_min_t1ps < s.scaledpl_min_t1ps;
  const bool time_ok = elapsed < 600.0;

  std::ostringstream detail;
  detail << "rand t1ps=" << s.randomized_t1ps
         << " scaledpl min=" << s.scaledpl_min_t1ps
         << " plicfw(beta=alpha) min=" << s.plicfw_eq_min_t1ps
         << " det cq=" << s.det_cq << " best other cq=" << s.max_other_cq
         << " elapsed=" << elapsed << "s";
  criterion(4, "synthetic experiment",
            rand_ok && det_ok && scaled_ok && icfw_ok && gap_ok && time_ok,
            detail.str());
}

// ---------------------------------------------------------------- 5
void check_german() {
  ExperimentConfig cfg = ExperimentConfig::german_defaults();
  // Deterministic T1PS on this universe ranges ~9-17% across universe
  // seeds (median ~12%); this seed sits in the median regime.
  cfg.seed = 14;
  const GermanUniverse gu = build_german_universe(german_data_path(), cfg);
  const SweepSpec spec = SweepSpec::defaults("german");
  std::ostringstream devnull;
  const auto rows = sweep(gu.universe, spec, devnull, ExecMode::Parallel);
  const SweepSummary s = summarize(rows, 3.5, 0.3);

  const bool baseline_ok = s.baseline_min_t1ps >= 10.0;
  const bool icfw_reaches = s.plicfw_any_min_t1ps < 3.5;
  const bool cq_ok = s.plicfw_low_t1ps_good_cq;

  std::ostringstream detail;
  detail << "baseline min t1ps=" << s.baseline_min_t1ps
         << " plicfw min t1ps=" << s.plicfw_any_min_t1ps
         << " scaledpl cq@min=" << s.scaledpl_cq_at_min;
  criterion(5, "german experiment", baseline_ok && icfw_reaches && cq_ok,
            detail.str());
}

// ---------------------------------------------------------------- 6
void check_gradient() {
  const auto records = load_german(german_data_path());
  const auto f = preprocess(records);
  Rng rng = substream(2024, 0xACC, 6);
  const double h = 1e-5;
  bool ok = true;
  double worst = 0.0;
  for (int point = 0; point < 10; ++point) {
    LinearModel model;
    for (auto& w : model.weights) w = 0.5 * rng.normal();
    model.bias = 0.5 * rng.normal();
    const auto grad = logistic_gradient(model, f);
    for (int d = 0; d <= kGermanFeatureDim; ++d) {
      LinearModel plus = model, minus = model;
      if (d < kGermanFeatureDim) {
        plus.weights[d] += h;
        minus.weights[d] -= h;
      } else {
        plus.bias += h;
        minus.bias -= h;
      }
      const double fd =
          (logistic_loss(plus, f) - logistic_loss(minus, f)) / (2.0 * h);
      const double rel =
          std::abs(grad[d] - fd) / std::max(std::abs(fd), 1e-8);
      worst = std::max(worst, rel);
      ok = ok && rel < 1e-5;
    }
  }
  std::ostringstream detail;
  detail << "worst relative error=" << worst;
  criterion(6, "gradient check", ok, detail.str());
}

// ---------------------------------------------------------------- 7
namespace oracle {

// Independent exhaustive enumeration: odometer over subset choices,
// exposures recomputed from scratch at every leaf.
bool feasible(const std::vector<std::vector<ItemId>>& sets, int k) {
  std::vector<std::vector<std::vector<ItemId>>> choices;
  for (const auto& s : sets) {
    std::vector<std::vector<ItemId>> subs;
    const int n = static_cast<int>(s.size());
    std::vector<int> mask(n, 0);
    std::fill(mask.end() - k, mask.end(), 1);
    do {
      std::vector<ItemId> sub;
      for (int i = 0; i < n; ++i) {
        if (mask[i]) sub.push_back(s[i]);
      }
      subs.push_back(std::move(sub));
    } while (std::next_permutation(mask.begin(), mask.end()));
    choices.push_back(std::move(subs));
  }
  std::vector<std::size_t> odo(sets.size(), 0);
  while (true) {
    std::unordered_map<ItemId, int> exposure;
    for (const auto& s : sets) {
      for (ItemId v : s) exposure.emplace(v, 0);
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (ItemId v : choices[i][odo[i]]) ++exposure[v];
    }
    const int first = exposure.begin()->second;
    bool equal = true;
    for (const auto& [v, e] : exposure) equal = equal && e == first;
    if (equal) return true;
    std::size_t pos = sets.size();
    while (pos > 0) {
      --pos;
      if (++odo[pos] < choices[pos].size()) break;
      odo[pos] = 0;
      if (pos == 0) return false;
    }
  }
}

}  // namespace oracle

void check_feasibility() {
  Rng rng = substream(2024, 0xACC, 7);
  bool ok = true;
  for (int rep = 0; rep < 100; ++rep) {
    const int consumers = 2 + static_cast<int>(rng.next_u64() % 3);
    const int producers = 3 + static_cast<int>(rng.next_u64() % 4);
    const int k = 1 + static_cast<int>(rng.next_u64() % 2);
    std::vector<std::vector<ItemId>> sets(consumers);
    for (auto& s : sets) {
      for (ItemId v = 0; v < producers; ++v) {
        if (rng.uniform_open01() < 0.6) s.push_back(v);
      }
      while (static_cast<int>(s.size()) < k) {
        const ItemId v = static_cast<ItemId>(rng.next_u64() % producers);
        if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
      }
    }
    ok = ok && equal_exposure_feasible(sets, k).feasible ==
                   oracle::feasible(sets, k);
  }
  // canonical infeasible instance: one consumer with {A, B}, k = 1
  ok = ok && !equal_exposure_feasible({{0, 1}}, 1).feasible;
  criterion(7, "feasibility checker", ok);
}

// ---------------------------------------------------------------- 8
std::string strip_runtime_column(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    out << line.substr(0, line.rfind(',')) << '\n';
  }
  return out.str();
}

void check_determinism() {
  const std::string spec_path = "/tmp/icfw_acc_spec.txt";
  const std::string cfg_path = "/tmp/icfw_acc_cfg.txt";
  {
    std::ofstream spec(spec_path);
    spec << "grid = custom\nvalues = 0.1,0.5\ntrials = 2\n";
    std::ofstream cfg(cfg_path);
    cfg << "n_users = 400\nm_items = 200\nk = 20\nell = 5\nseed = 9\n";
  }
  const std::string cli = ICFW_CLI_PATH;
  auto run = [&](const std::string& out, bool serial) {
    const std::string cmd = cli + (serial ? " --serial" : "") +
                            " sweep --config " + cfg_path + " --spec " +
                            spec_path + " --out " + out;
    return std::system(cmd.c_str()) == 0;
  };
  bool ok = run("/tmp/icfw_acc_a.csv", true) &&
            run("/tmp/icfw_acc_b.csv", false) &&
            run("/tmp/icfw_acc_c.csv", false);
  const std::string a = strip_runtime_column("/tmp/icfw_acc_a.csv");
  const std::string b = strip_runtime_column("/tmp/icfw_acc_b.csv");
  const std::string c = strip_runtime_column("/tmp/icfw_acc_c.csv");
  ok = ok && !a.empty() && a == b && b == c;
  criterion(8, "determinism (serial == parallel, repeat runs identical)", ok);
}

}  // namespace

int main() {
  check_toy();
  check_sampler();
  check_endpoints();
  check_synthetic();
  check_german();
  check_gradient();
  check_feasibility();
  check_determinism();
  std::printf("%d of 8 criteria passed\n", 8 - g_failures);
  return g_failures;
}

#include "icfw/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "icfw/german.hpp"
#include "icfw/kernel.hpp"
#include "icfw/rng.hpp"

namespace icfw {

namespace {

std::string fmt(double v) {
  std::ostringstream o;
  o << std::setprecision(12) << v;
  return o.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ResultRow run_experiment(const Universe& universe, const RankingPolicy& policy,
                         int trials, std::uint64_t grid_index, ExecMode mode) {
  if (trials < 1) {
    throw std::invalid_argument("run_experiment: trials must be >= 1");
  }
  ResultRow row;
  row.policy = policy;
  row.seed = universe.config.seed;
  row.trials = trials;
  const int n = universe.n_users();
  for (int t = 0; t < trials; ++t) {
    const auto start = std::chrono::steady_clock::now();
    const auto counts =
        simulate_trial(policy, universe, universe.config.seed, grid_index, t,
                       mode);
    std::vector<double> dcounts(counts.begin(), counts.end());
    const auto ledger = ImpressionLedger::from_counts(std::move(dcounts));
    TrialMetrics m;
    m.t1ps_pct = t1ps(ledger, universe.m_items());
    m.content_quality = content_quality(ledger, universe.truth, n);
    m.gini = gini(ledger);
    m.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    row.per_trial.push_back(m);
  }
  for (const auto& m : row.per_trial) {
    row.mean.t1ps_pct += m.t1ps_pct / trials;
    row.mean.content_quality += m.content_quality / trials;
    row.mean.gini += m.gini / trials;
    row.mean.runtime_ms += m.runtime_ms / trials;
  }
  return row;
}

void write_csv_header(std::ostream& out) {
  out << "policy,alpha,beta,c,seed,trial,t1ps_pct,content_quality,gini,"
         "runtime_ms\n";
}

void write_csv_rows(std::ostream& out, const ResultRow& row) {
  std::string alpha, beta, c;
  if (row.policy.kind == PolicyKind::PLICFW) {
    alpha = fmt(row.policy.alpha);
    beta = fmt(row.policy.beta);
  }
  if (row.policy.kind == PolicyKind::ScaledPL) c = fmt(row.policy.c);
  for (std::size_t t = 0; t < row.per_trial.size(); ++t) {
    const auto& m = row.per_trial[t];
    out << row.policy.name() << ',' << alpha << ',' << beta << ',' << c << ','
        << row.seed << ',' << t << ',' << fmt(m.t1ps_pct) << ','
        << fmt(m.content_quality) << ',' << fmt(m.gini) << ','
        << fmt(m.runtime_ms) << '\n';
  }
}

std::vector<double> SweepSpec::synthetic_grid() {
  std::vector<double> grid = {0.01, 0.025};
  for (int i = 1; i <= 20; ++i) grid.push_back(i * 0.05);  // 0.05 .. 1.00
  for (int j = 3; j <= 9; ++j) grid.push_back(j * 0.5);    // 1.5 .. 4.5
  return grid;
}

std::vector<double> SweepSpec::german_grid() {
  std::vector<double> grid = {0.01, 0.025};
  for (int i = 1; i <= 20; ++i) grid.push_back(i * 0.05);  // 0.05 .. 1.00
  for (int j = 3; j <= 14; ++j) grid.push_back(j * 0.5);   // 1.5 .. 7.0
  return grid;
}

namespace {

SweepSpec expand(const std::vector<double>& grid,
                 const std::vector<double>& beta_factors,
                 const std::vector<std::string>& policies, int trials) {
  SweepSpec spec;
  spec.trials = trials;
  auto wants = [&](const std::string& p) {
    return std::find(policies.begin(), policies.end(), p) != policies.end();
  };
  if (wants("det")) spec.points.push_back(RankingPolicy::deterministic());
  if (wants("rand")) spec.points.push_back(RankingPolicy::randomized());
  if (wants("iw")) spec.points.push_back(RankingPolicy::inverse_weighted());
  if (wants("scaledpl")) {
    for (double c : grid) spec.points.push_back(RankingPolicy::scaled_pl(c));
  }
  if (wants("plicfw")) {
    for (double f : beta_factors) {
      for (double a : grid) {
        spec.points.push_back(RankingPolicy::pl_icfw(a, f * a));
      }
    }
  }
  if (spec.points.empty()) {
    throw config_error("sweep spec: empty policy grid");
  }
  return spec;
}

const std::vector<std::string> kAllPolicies = {"det", "rand", "iw", "scaledpl",
                                               "plicfw"};

}  // namespace

SweepSpec SweepSpec::defaults(const std::string& grid_kind) {
  if (grid_kind == "synthetic") {
    return expand(synthetic_grid(), {1.0, 0.35}, kAllPolicies, 5);
  }
  if (grid_kind == "german") {
    return expand(german_grid(), {1.0, 0.35}, kAllPolicies, 5);
  }
  throw config_error("sweep spec: unknown grid kind '" + grid_kind + "'");
}

SweepSpec SweepSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("sweep spec: cannot open " + path);
  std::string grid_kind = "synthetic";
  std::vector<double> custom_values;
  std::vector<double> beta_factors = {1.0, 0.35};
  std::vector<std::string> policies = kAllPolicies;
  int trials = 5;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key, eq, value;
    if (!(ls >> key)) continue;
    if (!(ls >> eq >> value) || eq != "=") {
      throw config_error("sweep spec: " + path + ":" + std::to_string(lineno) +
                         ": expected 'key = value'");
    }
    if (key == "grid") {
      grid_kind = value;
    } else if (key == "values") {
      for (const auto& v : split_list(value)) {
        custom_values.push_back(std::stod(v));
      }
    } else if (key == "beta_rules") {
      beta_factors.clear();
      for (const auto& v : split_list(value)) {
        if (v == "eq") beta_factors.push_back(1.0);
        else if (v == "0.35") beta_factors.push_back(0.35);
        else throw config_error("sweep spec: beta rule must be eq or 0.35");
      }
    } else if (key == "policies") {
      policies = split_list(value);
      for (const auto& p : policies) {
        if (std::find(kAllPolicies.begin(), kAllPolicies.end(), p) ==
            kAllPolicies.end()) {
          throw config_error("sweep spec: unknown policy '" + p + "'");
        }
      }
    } else if (key == "trials") {
      trials = std::stoi(value);
      if (trials < 1) throw config_error("sweep spec: trials must be >= 1");
    } else {
      throw config_error("sweep spec: unknown key '" + key + "'");
    }
  }
  std::vector<double> grid;
  if (grid_kind == "synthetic") grid = synthetic_grid();
  else if (grid_kind == "german") grid = german_grid();
  else if (grid_kind == "custom") grid = custom_values;
  else throw config_error("sweep spec: unknown grid '" + grid_kind + "'");
  if (grid.empty() &&
      (std::find(policies.begin(), policies.end(), "scaledpl") !=
           policies.end() ||
       std::find(policies.begin(), policies.end(), "plicfw") !=
           policies.end())) {
    throw config_error("sweep spec: custom grid needs values = ...");
  }
  for (double v : grid) {
    if (!(v >= 0.0)) throw config_error("sweep spec: grid values must be >= 0");
  }
  return expand(grid, beta_factors, policies, trials);
}

std::vector<ResultRow> sweep(const Universe& universe, const SweepSpec& spec,
                             std::ostream& csv, ExecMode mode) {
  write_csv_header(csv);
  std::vector<ResultRow> rows;
  rows.reserve(spec.points.size());
  for (std::size_t g = 0; g < spec.points.size(); ++g) {
    rows.push_back(
        run_experiment(universe, spec.points[g], spec.trials, g, mode));
    write_csv_rows(csv, rows.back());
  }
  return rows;
}

Universe build_toy_universe() {
  Universe u;
  u.config.n_users = 10;
  u.config.m_items = 10;
  u.config.k = 4;
  u.config.ell = 1;
  u.config.n_popular = 0;
  u.config.seed = 1;
  u.truth.assign(10, 0.0);
  constexpr ItemId kJ = 9;
  for (int consumer = 0; consumer < 10; ++consumer) {
    CandidateSet cs;
    cs.user = consumer;
    if (consumer < 9) {
      cs.items = {static_cast<ItemId>(consumer),
                  static_cast<ItemId>((consumer + 1) % 9),
                  static_cast<ItemId>((consumer + 2) % 9), kJ};
    } else {
      cs.items = {kJ, 0, 1, 2};
    }
    // First listed candidate has the top relevance, so deterministic
    // ranking gives each producer exactly one first place.
    cs.scores = {4.0, 3.0, 2.0, 1.0};
    u.sets.push_back(std::move(cs));
  }
  finalize_universe(u);
  return u;
}

ToyResult toy_demo(int mc_trials, std::uint64_t seed) {
  Universe toy = build_toy_universe();
  toy.config.seed = seed;
  ToyResult result;
  for (int p = 0; p < 10; ++p) {
    result.producers.push_back(std::string(1, static_cast<char>('A' + p)));
  }
  const auto det = expected_impressions(RankingPolicy::deterministic(), toy, 1,
                                        seed);
  const auto mc = expected_impressions(RankingPolicy::randomized(), toy,
                                       mc_trials, seed);
  const auto closed = randomized_closed_form(toy);
  result.deterministic = det.counts;
  result.randomized_mc = mc.counts;
  result.randomized_closed = closed.counts;
  return result;
}

GermanUniverse build_german_universe(const std::string& data_path,
                                     const ExperimentConfig& config) {
  config.validate();
  const auto records = load_german(data_path);
  if (config.m_items > static_cast<int>(records.size())) {
    throw config_error("german: m_items exceeds record count");
  }
  const auto features = preprocess(records);
  const auto model = train_linear(features);
  const auto all_relevance = predict_relevance(model, features);

  // Uniform draw of m source rows without replacement, then sorted so
  // item ids follow file order.
  Rng select_rng = substream(config.seed, kStreamGermanSelect);
  std::vector<int> pool(records.size());
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < config.m_items; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(select_rng.next_u64() %
                                     (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> rows(pool.begin(), pool.begin() + config.m_items);
  std::sort(rows.begin(), rows.end());

  GermanUniverse gu;
  gu.source_rows = rows;
  gu.universe.config = config;
  gu.learned.resize(config.m_items);
  gu.universe.truth.resize(config.m_items);
  for (int i = 0; i < config.m_items; ++i) {
    gu.learned[i] = all_relevance[rows[i]];
    gu.universe.truth[i] = static_cast<double>(features.labels[rows[i]]);
  }
  gu.universe.relevance = gu.learned;

  Rng score_rng = substream(config.seed, kStreamCandidateScores);
  gu.universe.candidate_scores = build_german_candidate_scores(
      gu.learned, config, score_rng, &gu.boosted);

  gu.universe.sets.resize(config.n_users);
  for (int user = 0; user < config.n_users; ++user) {
    Rng set_rng = substream(config.seed, kStreamCandidateSets,
                            static_cast<std::uint64_t>(user));
    CandidateSet& cs = gu.universe.sets[user];
    cs.user = user;
    cs.items =
        sample_candidate_set(gu.universe.candidate_scores, config.k, set_rng);
    cs.scores.resize(cs.items.size());
    for (std::size_t i = 0; i < cs.items.size(); ++i) {
      cs.scores[i] = gu.learned[cs.items[i]];
    }
  }
  finalize_universe(gu.universe);
  return gu;
}

void write_german_universe_csv(std::ostream& out, const GermanUniverse& gu) {
  out << "item_id,source_row,learned_relevance,ground_truth_label,"
         "candidate_score,boosted\n";
  for (int i = 0; i < gu.universe.m_items(); ++i) {
    out << i << ',' << gu.source_rows[i] << ',' << fmt(gu.learned[i]) << ','
        << static_cast<int>(gu.universe.truth[i]) << ','
        << fmt(gu.universe.candidate_scores[i]) << ','
        << (gu.boosted[i] ? 1 : 0) << '\n';
  }
}

void apply_external_scores(Universe& u, const std::string& scores_csv_path) {
  std::ifstream in(scores_csv_path);
  if (!in) throw data_error("scores: cannot open " + scores_csv_path);
  std::vector<double> scores(u.m_items(),
                             std::numeric_limits<double>::quiet_NaN());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("item_id", 0) == 0) continue;
    std::istringstream ls(line);
    std::string id_str, score_str;
    if (!std::getline(ls, id_str, ',') || !std::getline(ls, score_str)) {
      throw data_error("scores: line " + std::to_string(lineno) +
                       ": expected item_id,score");
    }
    int id = 0;
    double score = 0.0;
    try {
      id = std::stoi(id_str);
      score = std::stod(score_str);
    } catch (const std::exception&) {
      throw data_error("scores: line " + std::to_string(lineno) +
                       ": bad number");
    }
    if (id < 0 || id >= u.m_items()) {
      throw data_error("scores: line " + std::to_string(lineno) +
                       ": item id out of range");
    }
    scores[id] = score;
  }
  for (int v = 0; v < u.m_items(); ++v) {
    if (std::isnan(scores[v])) {
      throw data_error("scores: missing score for item " + std::to_string(v));
    }
  }
  u.relevance = scores;
  for (auto& cs : u.sets) {
    for (std::size_t i = 0; i < cs.items.size(); ++i) {
      cs.scores[i] = scores[cs.items[i]];
    }
  }
}

}  // namespace icfw

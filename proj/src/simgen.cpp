#include "icfw/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "icfw/ranking.hpp"

namespace icfw {

void ExperimentConfig::validate() const {
  if (n_users <= 0 || m_items <= 0 || k <= 0 || ell <= 0) {
    throw config_error("config: n_users, m_items, k, ell must be positive");
  }
  if (!(ell <= k && k <= m_items)) {
    throw config_error("config: need ell <= k <= m_items");
  }
  if (n_popular < 0 || n_popular > m_items) {
    throw config_error("config: n_popular must be in [0, m_items]");
  }
  if (!(popular_score > 0.0) || !(beta_a > 0.0) || !(beta_b > 0.0)) {
    throw config_error("config: scores and beta shape parameters must be > 0");
  }
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open " + path);
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ls(line);
    std::string key, eq, value;
    if (!(ls >> key)) continue;  // blank line
    if (!(ls >> eq >> value) || eq != "=") {
      throw config_error("config: " + path + ":" + std::to_string(lineno) +
                         ": expected 'key = value'");
    }
    try {
      if (key == "n_users") cfg.n_users = std::stoi(value);
      else if (key == "m_items") cfg.m_items = std::stoi(value);
      else if (key == "k") cfg.k = std::stoi(value);
      else if (key == "ell") cfg.ell = std::stoi(value);
      else if (key == "n_popular") cfg.n_popular = std::stoi(value);
      else if (key == "popular_score") cfg.popular_score = std::stod(value);
      else if (key == "beta_a") cfg.beta_a = std::stod(value);
      else if (key == "beta_b") cfg.beta_b = std::stod(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else {
        throw config_error("config: unknown key '" + key + "' in " + path);
      }
    } catch (const config_error&) {
      throw;
    } catch (const std::exception&) {
      throw config_error("config: bad value for '" + key + "' in " + path);
    }
  }
  cfg.validate();
  return cfg;
}

double beta_sample(double a, double b, Rng& rng) {
  if (a == 1.0) {
    return 1.0 - std::pow(1.0 - rng.uniform_open01(), 1.0 / b);
  }
  std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
  const double x = ga(rng.engine());
  const double y = gb(rng.engine());
  return x / (x + y);
}

std::vector<double> gen_candidate_scores(const ExperimentConfig& config,
                                         std::span<const ItemId> boosted,
                                         Rng& rng) {
  config.validate();
  std::vector<double> scores(config.m_items, 0.0);
  std::vector<char> is_boosted(config.m_items, 0);
  for (ItemId v : boosted) {
    if (v < 0 || v >= config.m_items) {
      throw std::invalid_argument("gen_candidate_scores: boosted id out of range");
    }
    is_boosted[v] = 1;
  }
  for (int i = 0; i < config.m_items; ++i) {
    scores[i] = is_boosted[i] ? config.popular_score
                              : beta_sample(config.beta_a, config.beta_b, rng);
  }
  return scores;
}

std::vector<ItemId> sample_candidate_set(std::span<const double> cand_scores,
                                         int k, Rng& rng) {
  if (k <= 0 || static_cast<std::size_t>(k) > cand_scores.size()) {
    throw std::invalid_argument("sample_candidate_set: need 0 < k <= m");
  }
  Ranking full = sample_ranking(cand_scores, rng);
  std::vector<ItemId> items(full.begin(), full.begin() + k);
  return items;
}

std::vector<double> gen_relevance_synthetic(
    std::span<const double> candidate_scores, Rng& rng) {
  std::vector<double> r(candidate_scores.size());
  for (std::size_t i = 0; i < candidate_scores.size(); ++i) {
    r[i] = std::max(0.0, 5.0 - candidate_scores[i] + rng.normal());
  }
  return r;
}

}  // namespace icfw

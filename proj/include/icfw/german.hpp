#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "icfw/rng.hpp"
#include "icfw/simgen.hpp"
#include "icfw/types.hpp"

namespace icfw {

/// One row of the UCI German credit file: 20 raw attribute fields plus
/// the credit-risk label mapped good -> 1, bad -> 0.
struct CreditRecord {
  std::array<std::string, 20> attrs;
  int label = 0;
};

/// Parses the canonical space-separated file: 1000 rows, 21 whitespace
/// separated fields, final field in {1, 2}. Parse errors name the line.
std::vector<CreditRecord> load_german(const std::string& path);

constexpr int kGermanFeatureDim = 29;

/// 29-dimensional encoding: age, credit amount, credit duration
/// standardized over the full sample; sex (2), job (4), housing (3),
/// savings (5), checking (4) and purpose (8 grouped categories) one-hot.
/// Purpose groups merge domestic appliances into furniture/equipment,
/// retraining into education, and vacation into other; every remaining
/// block maps one code to one column. Unseen codes are errors.
struct GermanFeatures {
  std::vector<std::array<double, kGermanFeatureDim>> x;
  std::vector<int> labels;  // 1 good, 0 bad
};
GermanFeatures preprocess(const std::vector<CreditRecord>& records);

struct LinearModel {
  std::array<double, kGermanFeatureDim> weights{};
  double bias = 0.0;
};

/// Mean cross-entropy loss of the logistic model.
double logistic_loss(const LinearModel& model, const GermanFeatures& data);

/// Analytic gradient of the mean cross-entropy, packed as [weights..., bias].
std::array<double, kGermanFeatureDim + 1> logistic_gradient(
    const LinearModel& model, const GermanFeatures& data);

/// Full-batch gradient descent from zero initialization. Deterministic;
/// throws if the loss goes non-finite.
LinearModel train_linear(const GermanFeatures& data, int epochs = 2000,
                         double learning_rate = 0.1, std::uint64_t seed = 0);

/// Sigmoid outputs in (0, 1), one per record.
std::vector<double> predict_relevance(const LinearModel& model,
                                      const GermanFeatures& data);

/// Candidate scores for the m selected candidates: the ten candidates at
/// ascending-relevance ranks 51..60 (1-indexed) get the boosted score,
/// everyone else draws Beta(beta_a, beta_b). Requires at least 60
/// candidates and relevance.size() == config.m_items. boosted_out, when
/// non-null, flags the boosted candidates.
std::vector<double> build_german_candidate_scores(
    std::span<const double> relevance, const ExperimentConfig& config,
    Rng& rng, std::vector<bool>* boosted_out = nullptr);

}  // namespace icfw

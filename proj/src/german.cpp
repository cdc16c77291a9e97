#include "icfw/german.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace icfw {

namespace {

constexpr int kExpectedRows = 1000;

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow
double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

int category_index(const std::string& code,
                   std::initializer_list<const char*> codes,
                   const char* field) {
  int i = 0;
  for (const char* c : codes) {
    if (code == c) return i;
    ++i;
  }
  throw data_error(std::string("preprocess: unseen ") + field + " code '" +
                   code + "'");
}

// Purpose codes collapse to 8 groups: appliances join furniture/equipment,
// retraining joins education, vacation joins other.
int purpose_group(const std::string& code) {
  if (code == "A40") return 0;   // car (new)
  if (code == "A41") return 1;   // car (used)
  if (code == "A42" || code == "A44") return 2;  // furniture / appliances
  if (code == "A43") return 3;   // radio / television
  if (code == "A45") return 4;   // repairs
  if (code == "A46" || code == "A48") return 5;  // education / retraining
  if (code == "A49") return 6;   // business
  if (code == "A410" || code == "A47") return 7;  // other / vacation
  throw data_error("preprocess: unseen purpose code '" + code + "'");
}

int sex_index(const std::string& code) {
  if (code == "A91" || code == "A93" || code == "A94") return 0;  // male
  if (code == "A92" || code == "A95") return 1;                   // female
  throw data_error("preprocess: unseen personal status code '" + code + "'");
}

double numeric_field(const std::string& value, int row, const char* field) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw data_error(std::string("preprocess: row ") + std::to_string(row) +
                     ": non-numeric " + field + " '" + value + "'");
  }
}

void standardize(std::vector<double>& column) {
  const double n = static_cast<double>(column.size());
  const double mean =
      std::accumulate(column.begin(), column.end(), 0.0) / n;
  double var = 0.0;
  for (double v : column) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / (n - 1.0));
  for (double& v : column) v = (v - mean) / sd;
}

}  // namespace

std::vector<CreditRecord> load_german(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("load_german: cannot open " + path);
  std::vector<CreditRecord> records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> fields;
    std::string tok;
    while (ls >> tok) fields.push_back(tok);
    if (fields.empty()) continue;
    if (fields.size() != 21) {
      throw data_error("load_german: line " + std::to_string(lineno) +
                       ": expected 21 fields, got " +
                       std::to_string(fields.size()));
    }
    CreditRecord rec;
    for (int i = 0; i < 20; ++i) rec.attrs[i] = fields[i];
    if (fields[20] == "1") {
      rec.label = 1;  // good credit risk
    } else if (fields[20] == "2") {
      rec.label = 0;  // bad credit risk
    } else {
      throw data_error("load_german: line " + std::to_string(lineno) +
                       ": label must be 1 or 2, got '" + fields[20] + "'");
    }
    records.push_back(std::move(rec));
  }
  if (static_cast<int>(records.size()) != kExpectedRows) {
    throw data_error("load_german: expected " + std::to_string(kExpectedRows) +
                     " rows, got " + std::to_string(records.size()) +
                     " (last parsed line " + std::to_string(lineno) + ")");
  }
  return records;
}

GermanFeatures preprocess(const std::vector<CreditRecord>& records) {
  const int n = static_cast<int>(records.size());
  if (n == 0) throw std::invalid_argument("preprocess: no records");

  std::vector<double> age(n), amount(n), duration(n);
  for (int i = 0; i < n; ++i) {
    duration[i] = numeric_field(records[i].attrs[1], i + 1, "duration");
    amount[i] = numeric_field(records[i].attrs[4], i + 1, "credit amount");
    age[i] = numeric_field(records[i].attrs[12], i + 1, "age");
  }
  standardize(age);
  standardize(amount);
  standardize(duration);

  GermanFeatures out;
  out.x.resize(n);
  out.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& a = records[i].attrs;
    auto& f = out.x[i];
    f.fill(0.0);
    int p = 0;
    f[p++] = age[i];
    f[p++] = amount[i];
    f[p++] = duration[i];
    f[p + sex_index(a[8])] = 1.0;
    p += 2;
    f[p + category_index(a[16], {"A171", "A172", "A173", "A174"}, "job")] = 1.0;
    p += 4;
    f[p + category_index(a[14], {"A151", "A152", "A153"}, "housing")] = 1.0;
    p += 3;
    f[p + category_index(a[5], {"A61", "A62", "A63", "A64", "A65"},
                         "savings")] = 1.0;
    p += 5;
    f[p + category_index(a[0], {"A11", "A12", "A13", "A14"}, "checking")] = 1.0;
    p += 4;
    f[p + purpose_group(a[3])] = 1.0;
    p += 8;
    out.labels[i] = records[i].label;
  }
  return out;
}

double logistic_loss(const LinearModel& model, const GermanFeatures& data) {
  double loss = 0.0;
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    double z = model.bias;
    for (int d = 0; d < kGermanFeatureDim; ++d) {
      z += model.weights[d] * data.x[i][d];
    }
    loss += softplus(z) - data.labels[i] * z;
  }
  return loss / static_cast<double>(data.x.size());
}

std::array<double, kGermanFeatureDim + 1> logistic_gradient(
    const LinearModel& model, const GermanFeatures& data) {
  std::array<double, kGermanFeatureDim + 1> grad{};
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    double z = model.bias;
    for (int d = 0; d < kGermanFeatureDim; ++d) {
      z += model.weights[d] * data.x[i][d];
    }
    const double err = sigmoid(z) - data.labels[i];
    for (int d = 0; d < kGermanFeatureDim; ++d) {
      grad[d] += err * data.x[i][d];
    }
    grad[kGermanFeatureDim] += err;
  }
  const double n = static_cast<double>(data.x.size());
  for (double& g : grad) g /= n;
  return grad;
}

LinearModel train_linear(const GermanFeatures& data, int epochs,
                         double learning_rate, std::uint64_t /*seed*/) {
  if (data.x.empty()) {
    throw std::invalid_argument("train_linear: empty training data");
  }
  LinearModel model;  // zero init
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const auto grad = logistic_gradient(model, data);
    for (int d = 0; d < kGermanFeatureDim; ++d) {
      model.weights[d] -= learning_rate * grad[d];
    }
    model.bias -= learning_rate * grad[kGermanFeatureDim];
  }
  if (!std::isfinite(logistic_loss(model, data))) {
    throw std::runtime_error("train_linear: training diverged");
  }
  return model;
}

std::vector<double> predict_relevance(const LinearModel& model,
                                      const GermanFeatures& data) {
  std::vector<double> out(data.x.size());
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    double z = model.bias;
    for (int d = 0; d < kGermanFeatureDim; ++d) {
      z += model.weights[d] * data.x[i][d];
    }
    out[i] = sigmoid(z);
  }
  return out;
}

std::vector<double> build_german_candidate_scores(
    std::span<const double> relevance, const ExperimentConfig& config,
    Rng& rng, std::vector<bool>* boosted_out) {
  if (static_cast<int>(relevance.size()) != config.m_items) {
    throw std::invalid_argument(
        "build_german_candidate_scores: relevance size != m_items");
  }
  if (relevance.size() < 60) {
    throw std::invalid_argument(
        "build_german_candidate_scores: need at least 60 candidates");
  }
  std::vector<int> order(relevance.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return relevance[a] < relevance[b]; });
  // "50-60 lowest": ascending-rank positions 51..60, 1-indexed.
  std::vector<ItemId> boosted(order.begin() + 50, order.begin() + 60);
  if (boosted_out) {
    boosted_out->assign(relevance.size(), false);
    for (ItemId v : boosted) (*boosted_out)[v] = true;
  }
  return gen_candidate_scores(config, boosted, rng);
}

}  // namespace icfw

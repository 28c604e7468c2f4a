#include <algorithm>
#include <cmath>
#include <set>

#include "modeswitch/learned.hpp"

namespace modeswitch {

namespace {

using FeatureRow = std::array<double, kFeatureCount>;

// Row-wise softmax probabilities, stabilized by subtracting the max logit.
std::vector<double> softmax(const std::vector<double>& logits) {
  const double max_logit = *std::max_element(logits.begin(), logits.end());
  std::vector<double> probs(logits.size());
  double sum = 0.0;
  for (size_t k = 0; k < logits.size(); ++k) {
    probs[k] = std::exp(logits[k] - max_logit);
    sum += probs[k];
  }
  for (double& p : probs) p /= sum;
  return probs;
}

std::vector<double> class_logits(
    const std::vector<std::array<double, kFeatureCount>>& weights,
    const std::vector<double>& bias, const FeatureRow& row) {
  std::vector<double> logits(weights.size());
  for (size_t k = 0; k < weights.size(); ++k) {
    double z = bias[k];
    for (int d = 0; d < kFeatureCount; ++d) {
      z += weights[k][static_cast<size_t>(d)] * row[static_cast<size_t>(d)];
    }
    logits[k] = z;
  }
  return logits;
}

FeatureRow standardize(const LogisticModel& model, const FeatureRow& raw) {
  FeatureRow out;
  for (int d = 0; d < kFeatureCount; ++d) {
    const size_t i = static_cast<size_t>(d);
    out[i] = (raw[i] - model.feature_means[i]) / model.feature_stds[i];
  }
  return out;
}

}  // namespace

LogisticObjective logistic_objective(
    const std::vector<std::array<double, kFeatureCount>>& x,
    const std::vector<int>& y,
    const std::vector<std::array<double, kFeatureCount>>& weights,
    const std::vector<double>& bias, double l2) {
  const size_t n = x.size();
  const size_t k_classes = weights.size();
  LogisticObjective result;
  result.d_weights.assign(k_classes, FeatureRow{});
  result.d_bias.assign(k_classes, 0.0);

  double loss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const auto probs = softmax(class_logits(weights, bias, x[i]));
    loss += -std::log(std::max(probs[static_cast<size_t>(y[i])], 1e-300));
    for (size_t k = 0; k < k_classes; ++k) {
      const double residual =
          probs[k] - (static_cast<int>(k) == y[i] ? 1.0 : 0.0);
      result.d_bias[k] += residual / n;
      for (int d = 0; d < kFeatureCount; ++d) {
        result.d_weights[k][static_cast<size_t>(d)] +=
            residual * x[i][static_cast<size_t>(d)] / n;
      }
    }
  }
  loss /= static_cast<double>(n);

  // L2 penalty on weights only; bias stays unregularized.
  for (size_t k = 0; k < k_classes; ++k) {
    for (int d = 0; d < kFeatureCount; ++d) {
      const size_t i = static_cast<size_t>(d);
      loss += 0.5 * l2 * weights[k][i] * weights[k][i];
      result.d_weights[k][i] += l2 * weights[k][i];
    }
  }
  result.loss = loss;
  return result;
}

LogisticModel train_logistic(const std::vector<DatasetRow>& rows,
                             double learning_rate, int iterations, double l2) {
  if (rows.empty()) {
    throw DataError("train_logistic: empty dataset");
  }
  if (!(learning_rate > 0.0) || iterations < 0 || l2 < 0.0) {
    throw ConfigError("train_logistic: bad hyperparameters");
  }
  std::set<int> present;
  for (const auto& row : rows) present.insert(oracle_class_index(row.label));
  if (iterations > 0 && present.size() < 2) {
    throw DataError("train_logistic: need at least 2 distinct classes");
  }

  LogisticModel model;
  model.weights.assign(kOracleClassCount, FeatureRow{});
  model.bias.assign(kOracleClassCount, 0.0);

  // Standardization statistics from the training rows. Zero-variance
  // features get std 1 so they contribute nothing after centering.
  std::vector<FeatureRow> raw;
  std::vector<int> y;
  raw.reserve(rows.size());
  y.reserve(rows.size());
  for (const auto& row : rows) {
    raw.push_back(to_array(row.features));
    y.push_back(oracle_class_index(row.label));
  }
  const double n = static_cast<double>(rows.size());
  for (int d = 0; d < kFeatureCount; ++d) {
    const size_t i = static_cast<size_t>(d);
    double mean = 0.0;
    for (const auto& row : raw) mean += row[i];
    mean /= n;
    double variance = 0.0;
    for (const auto& row : raw) {
      variance += (row[i] - mean) * (row[i] - mean);
    }
    variance /= n;
    model.feature_means[i] = mean;
    model.feature_stds[i] = variance > 1e-24 ? std::sqrt(variance) : 1.0;
  }

  std::vector<FeatureRow> x;
  x.reserve(raw.size());
  for (const auto& row : raw) x.push_back(standardize(model, row));

  double previous_loss = std::numeric_limits<double>::infinity();
  for (int it = 0; it < iterations; ++it) {
    const LogisticObjective objective =
        logistic_objective(x, y, model.weights, model.bias, l2);
    if (!std::isfinite(objective.loss)) {
      throw ConfigError("train_logistic: non-finite loss at iteration " +
                        std::to_string(it));
    }
    if (objective.loss >
        previous_loss + 1e-12 * std::max(1.0, std::abs(previous_loss))) {
      throw ConfigError(
          "train_logistic: objective increased at iteration " +
          std::to_string(it) + "; learning rate too large");
    }
    previous_loss = objective.loss;
    for (int k = 0; k < kOracleClassCount; ++k) {
      const size_t ki = static_cast<size_t>(k);
      model.bias[ki] -= learning_rate * objective.d_bias[ki];
      for (int d = 0; d < kFeatureCount; ++d) {
        const size_t di = static_cast<size_t>(d);
        model.weights[ki][di] -= learning_rate * objective.d_weights[ki][di];
      }
    }
  }
  return model;
}

InferenceMode predict(const LogisticModel& model,
                      const FeatureVector& features) {
  if (model.weights.empty()) {
    throw DataError("predict: untrained logistic model");
  }
  const FeatureRow x = standardize(model, to_array(features));
  const auto logits = class_logits(model.weights, model.bias, x);
  // Argmax with ties going to the first class in the fixed order.
  size_t best = 0;
  for (size_t k = 1; k < logits.size(); ++k) {
    if (logits[k] > logits[best]) best = k;
  }
  return oracle_class_from_index(static_cast<int>(best));
}

}  // namespace modeswitch

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <variant>
#include <vector>

#include "modeswitch/classifier.hpp"
#include "modeswitch/domain.hpp"
#include "modeswitch/routing.hpp"

namespace modeswitch {

inline constexpr int kOracleClassCount = 5;

/// Index of a mode within the fixed five-class order (FP16, INT8, GPTQ4,
/// speculative decoding, GPTQ+prefix caching); -1 if outside that space.
int oracle_class_index(InferenceMode mode);
InferenceMode oracle_class_from_index(int index);

/// One labeled example: request features plus the oracle's mode choice.
struct DatasetRow {
  FeatureVector features;
  InferenceMode label = InferenceMode::FP16;  // one of the five classes
  WorkloadFamily family = WorkloadFamily::SyntheticSS;
};

/// Labels every trace request with the constraint-aware oracle over the
/// five-class candidate set. Every request must carry a workload tag.
std::vector<DatasetRow> build_dataset(
    const std::vector<RequestDescriptor>& trace, const ProfileTable& table,
    const ConstraintSet& constraints);

/// Labels with an arbitrary policy instead of the oracle (used to imitate
/// the rule controller). Labels must stay inside the five-class space.
std::vector<DatasetRow> build_dataset_with_policy(
    const std::vector<RequestDescriptor>& trace, const RoutingPolicy& policy);

// Dataset files are line-delimited JSON: {"features": {...}, "label": "...",
// "family": "..."}.
void save_dataset(const std::vector<DatasetRow>& rows,
                  const std::filesystem::path& path);
std::vector<DatasetRow> load_dataset(const std::filesystem::path& path);

struct SplitDataset {
  std::vector<DatasetRow> train;
  std::vector<DatasetRow> test;
};

/// Label-stratified split; test_fraction of each class (rounded down) goes
/// to the test set. Deterministic for a given seed and row order.
SplitDataset stratified_split(const std::vector<DatasetRow>& rows,
                              double test_fraction, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Decision tree (CART, Gini impurity, midpoint thresholds)

struct TreeNode {
  bool leaf = true;
  int feature_index = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::array<int, kOracleClassCount> class_counts = {};
};

struct DecisionTreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  int max_depth = 6;
  int min_samples_split = 2;
};

/// Greedy CART training. Splits minimize weighted Gini impurity, thresholds
/// sit at midpoints between sorted distinct feature values, and growth stops
/// at max_depth, min_samples_split, a pure node, or no improving split. The
/// seed only breaks ties among splits with exactly equal impurity.
DecisionTreeModel train_tree(const std::vector<DatasetRow>& rows,
                             int max_depth, int min_samples_split,
                             std::uint64_t seed);

InferenceMode predict(const DecisionTreeModel& model,
                      const FeatureVector& features);

// ---------------------------------------------------------------------------
// Random forest (bootstrap resamples, per-split feature subsets)

struct RandomForestModel {
  std::vector<DecisionTreeModel> trees;
  int n_trees = 50;
  int features_per_split = 3;
  std::uint64_t seed = 0;
};

/// features_per_split = 0 selects floor(sqrt(feature count)). Prediction is
/// a majority vote with ties broken by the fixed class order.
RandomForestModel train_forest(const std::vector<DatasetRow>& rows,
                               int n_trees, int features_per_split,
                               std::uint64_t seed);

InferenceMode predict(const RandomForestModel& model,
                      const FeatureVector& features);

// ---------------------------------------------------------------------------
// Multinomial logistic regression (softmax, full-batch gradient descent)

struct LogisticModel {
  // weights[k][d]: class k, feature d, on standardized features.
  std::vector<std::array<double, kFeatureCount>> weights;
  std::vector<double> bias;
  std::array<double, kFeatureCount> feature_means = {};
  std::array<double, kFeatureCount> feature_stds = {};
};

/// Cross-entropy + L2 objective, minimized by full-batch gradient descent on
/// standardized features. The objective must decrease monotonically; if a
/// step increases it, training halts with a step-size error. Zero-variance
/// features get std 1 and contribute nothing.
LogisticModel train_logistic(const std::vector<DatasetRow>& rows,
                             double learning_rate, int iterations, double l2);

InferenceMode predict(const LogisticModel& model,
                      const FeatureVector& features);

/// Objective value and analytic gradients at the given parameters, exposed
/// so the gradient can be checked against finite differences.
/// x holds standardized feature rows; y holds class indices.
struct LogisticObjective {
  double loss = 0.0;
  std::vector<std::array<double, kFeatureCount>> d_weights;
  std::vector<double> d_bias;
};

LogisticObjective logistic_objective(
    const std::vector<std::array<double, kFeatureCount>>& x,
    const std::vector<int>& y,
    const std::vector<std::array<double, kFeatureCount>>& weights,
    const std::vector<double>& bias, double l2);

// ---------------------------------------------------------------------------
// Evaluation and serialization

struct ConfusionMatrix {
  // counts[i][j]: rows with true class i predicted as class j, in the fixed
  // five-class order.
  std::array<std::array<int, kOracleClassCount>, kOracleClassCount> counts =
      {};
  int total = 0;
  double accuracy = 0.0;
};

ConfusionMatrix confusion_matrix(
    const std::function<InferenceMode(const FeatureVector&)>& predictor,
    const std::vector<DatasetRow>& rows);

using AnyModel =
    std::variant<DecisionTreeModel, RandomForestModel, LogisticModel>;

InferenceMode predict(const AnyModel& model, const FeatureVector& features);

// Models serialize to JSON with a "kind" tag; identical training inputs
// produce byte-identical files.
void save_model(const AnyModel& model, const std::filesystem::path& path);
AnyModel load_model(const std::filesystem::path& path);

std::string model_kind(const AnyModel& model);

/// Routing policy backed by a trained model: extracts features, predicts a
/// mode, and records the wall-clock of that whole decision.
class LearnedPolicy final : public RoutingPolicy {
 public:
  LearnedPolicy(AnyModel model, std::string name);
  std::string name() const override { return name_; }
  RoutingDecision route(const RequestDescriptor& request) const override;

 private:
  AnyModel model_;
  std::string name_;
};

}  // namespace modeswitch

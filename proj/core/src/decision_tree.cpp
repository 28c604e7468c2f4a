#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "modeswitch/learned.hpp"

namespace modeswitch {

namespace {

using FeatureRow = std::array<double, kFeatureCount>;

double gini(const std::array<int, kOracleClassCount>& counts, int total) {
  if (total == 0) return 0.0;
  double sum_sq = 0.0;
  for (int c : counts) {
    const double p = static_cast<double>(c) / total;
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

int majority_class(const std::array<int, kOracleClassCount>& counts) {
  int best = 0;
  for (int i = 1; i < kOracleClassCount; ++i) {
    if (counts[static_cast<size_t>(i)] > counts[static_cast<size_t>(best)]) {
      best = i;
    }
  }
  return best;
}

struct SplitCandidate {
  int feature = -1;
  double threshold = 0.0;
};

struct TreeBuilder {
  const std::vector<FeatureRow>& x;
  const std::vector<int>& y;
  int max_depth;
  int min_samples_split;
  int features_per_split;  // <= 0 means all features
  std::mt19937_64& rng;
  std::vector<TreeNode> nodes;

  // Feature indices considered at one node: all of them, or a uniformly
  // drawn subset for forests.
  std::vector<int> sample_features() {
    std::vector<int> indices(kFeatureCount);
    std::iota(indices.begin(), indices.end(), 0);
    if (features_per_split <= 0 || features_per_split >= kFeatureCount) {
      return indices;
    }
    // Partial Fisher-Yates over the index list, raw engine draws only.
    for (int i = 0; i < features_per_split; ++i) {
      const size_t j =
          i + static_cast<size_t>(rng() % (kFeatureCount - static_cast<size_t>(i)));
      std::swap(indices[static_cast<size_t>(i)], indices[j]);
    }
    indices.resize(static_cast<size_t>(features_per_split));
    std::sort(indices.begin(), indices.end());
    return indices;
  }

  int grow(std::vector<size_t>& rows, int depth) {
    std::array<int, kOracleClassCount> counts{};
    for (size_t r : rows) counts[static_cast<size_t>(y[r])]++;
    const int total = static_cast<int>(rows.size());
    const double node_impurity = gini(counts, total);

    const int node_index = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes.back().class_counts = counts;

    const bool pure = node_impurity == 0.0;
    if (pure || depth >= max_depth || total < min_samples_split) {
      return node_index;
    }

    // Find the weighted-Gini-minimizing split over midpoint thresholds.
    double best_impurity = node_impurity - 1e-12;
    std::vector<SplitCandidate> best_candidates;
    for (int feature : sample_features()) {
      std::vector<size_t> order = rows;
      std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const double va = x[a][static_cast<size_t>(feature)];
        const double vb = x[b][static_cast<size_t>(feature)];
        return va < vb || (va == vb && a < b);
      });

      std::array<int, kOracleClassCount> left_counts{};
      int left_total = 0;
      for (size_t pos = 0; pos + 1 < order.size(); ++pos) {
        left_counts[static_cast<size_t>(y[order[pos]])]++;
        ++left_total;
        const double v = x[order[pos]][static_cast<size_t>(feature)];
        const double v_next = x[order[pos + 1]][static_cast<size_t>(feature)];
        if (v == v_next) continue;  // only split between distinct values

        std::array<int, kOracleClassCount> right_counts{};
        for (int c = 0; c < kOracleClassCount; ++c) {
          right_counts[static_cast<size_t>(c)] =
              counts[static_cast<size_t>(c)] -
              left_counts[static_cast<size_t>(c)];
        }
        const int right_total = total - left_total;
        const double weighted =
            (left_total * gini(left_counts, left_total) +
             right_total * gini(right_counts, right_total)) /
            total;
        if (weighted < best_impurity) {
          best_impurity = weighted;
          best_candidates.clear();
          best_candidates.push_back({feature, (v + v_next) / 2.0});
        } else if (weighted == best_impurity) {
          best_candidates.push_back({feature, (v + v_next) / 2.0});
        }
      }
    }

    if (best_candidates.empty()) {
      return node_index;  // no improving split; stay a leaf
    }
    const SplitCandidate chosen =
        best_candidates.size() == 1
            ? best_candidates[0]
            : best_candidates[static_cast<size_t>(rng() %
                                                  best_candidates.size())];

    std::vector<size_t> left_rows;
    std::vector<size_t> right_rows;
    for (size_t r : rows) {
      if (x[r][static_cast<size_t>(chosen.feature)] < chosen.threshold) {
        left_rows.push_back(r);
      } else {
        right_rows.push_back(r);
      }
    }
    rows.clear();
    rows.shrink_to_fit();

    nodes[static_cast<size_t>(node_index)].leaf = false;
    nodes[static_cast<size_t>(node_index)].feature_index = chosen.feature;
    nodes[static_cast<size_t>(node_index)].threshold = chosen.threshold;
    const int left_child = grow(left_rows, depth + 1);
    nodes[static_cast<size_t>(node_index)].left = left_child;
    const int right_child = grow(right_rows, depth + 1);
    nodes[static_cast<size_t>(node_index)].right = right_child;
    return node_index;
  }
};

DecisionTreeModel train_tree_impl(const std::vector<FeatureRow>& x,
                                  const std::vector<int>& y, int max_depth,
                                  int min_samples_split,
                                  int features_per_split,
                                  std::mt19937_64& rng) {
  TreeBuilder builder{x, y, max_depth, min_samples_split, features_per_split,
                      rng, {}};
  std::vector<size_t> all_rows(x.size());
  std::iota(all_rows.begin(), all_rows.end(), size_t{0});
  builder.grow(all_rows, 0);
  DecisionTreeModel model;
  model.nodes = std::move(builder.nodes);
  model.max_depth = max_depth;
  model.min_samples_split = min_samples_split;
  return model;
}

void to_matrix(const std::vector<DatasetRow>& rows,
               std::vector<FeatureRow>& x, std::vector<int>& y) {
  x.reserve(rows.size());
  y.reserve(rows.size());
  for (const auto& row : rows) {
    x.push_back(to_array(row.features));
    y.push_back(oracle_class_index(row.label));
  }
}

}  // namespace

DecisionTreeModel train_tree(const std::vector<DatasetRow>& rows,
                             int max_depth, int min_samples_split,
                             std::uint64_t seed) {
  if (rows.empty()) {
    throw DataError("train_tree: empty dataset");
  }
  if (max_depth < 0 || min_samples_split < 2) {
    throw ConfigError("train_tree: max_depth must be >= 0 and "
                      "min_samples_split >= 2");
  }
  std::vector<FeatureRow> x;
  std::vector<int> y;
  to_matrix(rows, x, y);
  std::mt19937_64 rng(seed);
  return train_tree_impl(x, y, max_depth, min_samples_split, 0, rng);
}

InferenceMode predict(const DecisionTreeModel& model,
                      const FeatureVector& features) {
  if (model.nodes.empty()) {
    throw DataError("predict: untrained decision tree");
  }
  const FeatureRow values = to_array(features);
  size_t node = 0;
  while (!model.nodes[node].leaf) {
    const TreeNode& current = model.nodes[node];
    node = static_cast<size_t>(
        values[static_cast<size_t>(current.feature_index)] < current.threshold
            ? current.left
            : current.right);
  }
  return oracle_class_from_index(majority_class(model.nodes[node].class_counts));
}

RandomForestModel train_forest(const std::vector<DatasetRow>& rows,
                               int n_trees, int features_per_split,
                               std::uint64_t seed) {
  if (rows.empty()) {
    throw DataError("train_forest: empty dataset");
  }
  if (n_trees < 1) {
    throw ConfigError("train_forest: n_trees must be >= 1");
  }
  if (features_per_split == 0) {
    features_per_split =
        static_cast<int>(std::floor(std::sqrt(double(kFeatureCount))));
  }
  if (features_per_split < 0 || features_per_split > kFeatureCount) {
    throw ConfigError("train_forest: features_per_split out of range");
  }

  std::vector<FeatureRow> x;
  std::vector<int> y;
  to_matrix(rows, x, y);

  RandomForestModel model;
  model.n_trees = n_trees;
  model.features_per_split = features_per_split;
  model.seed = seed;
  model.trees.reserve(static_cast<size_t>(n_trees));

  std::mt19937_64 master(seed);
  const size_t n = rows.size();
  for (int t = 0; t < n_trees; ++t) {
    std::mt19937_64 tree_rng(master());
    // Bootstrap resample of the same size, with replacement.
    std::vector<FeatureRow> bx;
    std::vector<int> by;
    bx.reserve(n);
    by.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      const size_t pick = static_cast<size_t>(tree_rng() % n);
      bx.push_back(x[pick]);
      by.push_back(y[pick]);
    }
    model.trees.push_back(train_tree_impl(bx, by, 6, 2, features_per_split,
                                          tree_rng));
  }
  return model;
}

InferenceMode predict(const RandomForestModel& model,
                      const FeatureVector& features) {
  if (model.trees.empty()) {
    throw DataError("predict: untrained random forest");
  }
  std::array<int, kOracleClassCount> votes{};
  for (const auto& tree : model.trees) {
    votes[static_cast<size_t>(oracle_class_index(predict(tree, features)))]++;
  }
  return oracle_class_from_index(majority_class(votes));
}

}  // namespace modeswitch

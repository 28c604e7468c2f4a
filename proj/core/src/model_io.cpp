#include <chrono>
#include <fstream>

#include <json.hpp>

#include "modeswitch/learned.hpp"

namespace modeswitch {

namespace {

nlohmann::ordered_json nodes_to_json(const DecisionTreeModel& model) {
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const auto& node : model.nodes) {
    nlohmann::ordered_json entry;
    entry["leaf"] = node.leaf;
    if (node.leaf) {
      entry["class_counts"] = node.class_counts;
    } else {
      entry["feature_index"] = node.feature_index;
      entry["threshold"] = node.threshold;
      entry["left"] = node.left;
      entry["right"] = node.right;
    }
    nodes.push_back(std::move(entry));
  }
  return nodes;
}

DecisionTreeModel nodes_from_json(const nlohmann::json& tree_json) {
  DecisionTreeModel model;
  model.max_depth = tree_json.value("max_depth", 6);
  model.min_samples_split = tree_json.value("min_samples_split", 2);
  if (!tree_json.contains("nodes") || !tree_json["nodes"].is_array()) {
    throw DataError("model: tree is missing its node array");
  }
  for (const auto& entry : tree_json["nodes"]) {
    TreeNode node;
    node.leaf = entry.at("leaf").get<bool>();
    if (node.leaf) {
      const auto counts = entry.at("class_counts");
      if (!counts.is_array() || counts.size() != kOracleClassCount) {
        throw DataError("model: leaf class_counts must have 5 entries");
      }
      for (int i = 0; i < kOracleClassCount; ++i) {
        node.class_counts[static_cast<size_t>(i)] =
            counts[static_cast<size_t>(i)].get<int>();
        if (node.class_counts[static_cast<size_t>(i)] < 0) {
          throw DataError("model: negative class count");
        }
      }
    } else {
      node.feature_index = entry.at("feature_index").get<int>();
      node.threshold = entry.at("threshold").get<double>();
      node.left = entry.at("left").get<int>();
      node.right = entry.at("right").get<int>();
      if (node.feature_index < 0 || node.feature_index >= kFeatureCount) {
        throw DataError("model: feature_index out of range");
      }
    }
    model.nodes.push_back(node);
  }
  const int node_count = static_cast<int>(model.nodes.size());
  for (const auto& node : model.nodes) {
    if (!node.leaf && (node.left < 0 || node.left >= node_count ||
                       node.right < 0 || node.right >= node_count)) {
      throw DataError("model: tree child index out of range");
    }
  }
  return model;
}

nlohmann::ordered_json classes_json() {
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (InferenceMode mode : oracle_classes()) {
    classes.push_back(std::string(to_string(mode)));
  }
  return classes;
}

void check_classes(const nlohmann::json& root) {
  if (!root.contains("classes")) return;
  const auto expected = classes_json();
  if (root["classes"] != expected) {
    throw DataError("model: unexpected class order");
  }
}

}  // namespace

std::string model_kind(const AnyModel& model) {
  if (std::holds_alternative<DecisionTreeModel>(model)) return "decision_tree";
  if (std::holds_alternative<RandomForestModel>(model)) return "random_forest";
  return "logistic";
}

InferenceMode predict(const AnyModel& model, const FeatureVector& features) {
  return std::visit(
      [&](const auto& concrete) { return predict(concrete, features); },
      model);
}

void save_model(const AnyModel& model, const std::filesystem::path& path) {
  nlohmann::ordered_json root;
  root["kind"] = model_kind(model);
  root["classes"] = classes_json();

  if (const auto* tree = std::get_if<DecisionTreeModel>(&model)) {
    root["max_depth"] = tree->max_depth;
    root["min_samples_split"] = tree->min_samples_split;
    root["nodes"] = nodes_to_json(*tree);
  } else if (const auto* forest = std::get_if<RandomForestModel>(&model)) {
    root["n_trees"] = forest->n_trees;
    root["features_per_split"] = forest->features_per_split;
    root["seed"] = forest->seed;
    nlohmann::ordered_json trees = nlohmann::ordered_json::array();
    for (const auto& tree : forest->trees) {
      nlohmann::ordered_json tree_json;
      tree_json["max_depth"] = tree.max_depth;
      tree_json["min_samples_split"] = tree.min_samples_split;
      tree_json["nodes"] = nodes_to_json(tree);
      trees.push_back(std::move(tree_json));
    }
    root["trees"] = std::move(trees);
  } else {
    const auto& logistic = std::get<LogisticModel>(model);
    root["weights"] = logistic.weights;
    root["bias"] = logistic.bias;
    root["feature_means"] = logistic.feature_means;
    root["feature_stds"] = logistic.feature_stds;
  }

  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write model file: " + path.string());
  }
  out << root.dump(2) << '\n';
  if (!out) {
    throw DataError("failed while writing model file: " + path.string());
  }
}

AnyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open model file: " + path.string());
  }
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model " + path.string() + ": invalid JSON: " + e.what());
  }
  if (!root.is_object() || !root.contains("kind")) {
    throw DataError("model " + path.string() + ": missing 'kind'");
  }
  check_classes(root);
  const std::string kind = root["kind"].get<std::string>();

  try {
    if (kind == "decision_tree") {
      return nodes_from_json(root);
    }
    if (kind == "random_forest") {
      RandomForestModel forest;
      forest.n_trees = root.at("n_trees").get<int>();
      forest.features_per_split = root.at("features_per_split").get<int>();
      forest.seed = root.at("seed").get<std::uint64_t>();
      for (const auto& tree_json : root.at("trees")) {
        forest.trees.push_back(nodes_from_json(tree_json));
      }
      if (forest.trees.empty()) {
        throw DataError("model: forest has no trees");
      }
      return forest;
    }
    if (kind == "logistic") {
      LogisticModel logistic;
      logistic.weights = root.at("weights")
                             .get<std::vector<std::array<double, kFeatureCount>>>();
      logistic.bias = root.at("bias").get<std::vector<double>>();
      logistic.feature_means =
          root.at("feature_means").get<std::array<double, kFeatureCount>>();
      logistic.feature_stds =
          root.at("feature_stds").get<std::array<double, kFeatureCount>>();
      if (logistic.weights.size() != kOracleClassCount ||
          logistic.bias.size() != kOracleClassCount) {
        throw DataError("model: logistic parameter shapes are wrong");
      }
      for (double std_value : logistic.feature_stds) {
        if (!(std_value > 0.0)) {
          throw DataError("model: feature_stds must be strictly positive");
        }
      }
      return logistic;
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model " + path.string() + ": " + e.what());
  }
  throw DataError("model " + path.string() + ": unknown kind '" + kind + "'");
}

LearnedPolicy::LearnedPolicy(AnyModel model, std::string name)
    : model_(std::move(model)), name_(std::move(name)) {}

RoutingDecision LearnedPolicy::route(const RequestDescriptor& request) const {
  const auto start = std::chrono::steady_clock::now();
  const FeatureVector features = extract_features(request);
  RoutingDecision decision;
  decision.mode = predict(model_, features);
  decision.reason = RoutingReason::LearnedVote;
  decision.overhead_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  return decision;
}

}  // namespace modeswitch

#include <fstream>
#include <random>

#include <json.hpp>

#include "modeswitch/learned.hpp"

namespace modeswitch {

int oracle_class_index(InferenceMode mode) {
  const auto classes = oracle_classes();
  for (int i = 0; i < kOracleClassCount; ++i) {
    if (classes[i] == mode) return i;
  }
  return -1;
}

InferenceMode oracle_class_from_index(int index) {
  if (index < 0 || index >= kOracleClassCount) {
    throw DataError("oracle class index out of range: " +
                    std::to_string(index));
  }
  return oracle_classes()[static_cast<size_t>(index)];
}

namespace {

DatasetRow make_row(const RequestDescriptor& request, InferenceMode label) {
  if (!request.workload_tag) {
    throw DataError("dataset: request '" + request.request_id +
                    "' has no workload tag; dataset construction requires "
                    "tagged traffic");
  }
  if (oracle_class_index(label) < 0) {
    throw DataError("dataset: request '" + request.request_id +
                    "' was labeled " + std::string(to_string(label)) +
                    ", outside the five-class label space");
  }
  DatasetRow row;
  row.features = extract_features(request);
  row.label = label;
  row.family = *request.workload_tag;
  return row;
}

}  // namespace

std::vector<DatasetRow> build_dataset(
    const std::vector<RequestDescriptor>& trace, const ProfileTable& table,
    const ConstraintSet& constraints) {
  const auto candidates = default_oracle_candidates();
  std::vector<DatasetRow> rows;
  rows.reserve(trace.size());
  for (const auto& request : trace) {
    if (!request.workload_tag) {
      throw DataError("dataset: request '" + request.request_id +
                      "' has no workload tag; dataset construction requires "
                      "tagged traffic");
    }
    RoutingDecision decision =
        route_oracle(*request.workload_tag, table, constraints, candidates);
    rows.push_back(make_row(request, decision.mode));
  }
  return rows;
}

std::vector<DatasetRow> build_dataset_with_policy(
    const std::vector<RequestDescriptor>& trace, const RoutingPolicy& policy) {
  std::vector<DatasetRow> rows;
  rows.reserve(trace.size());
  for (const auto& request : trace) {
    rows.push_back(make_row(request, policy.route(request).mode));
  }
  return rows;
}

void save_dataset(const std::vector<DatasetRow>& rows,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write dataset file: " + path.string());
  }
  const auto& names = feature_names();
  for (const auto& row : rows) {
    nlohmann::ordered_json line;
    nlohmann::ordered_json features;
    const auto values = to_array(row.features);
    for (int i = 0; i < kFeatureCount; ++i) {
      // The ratio is the only fractional feature; the rest stay integers.
      if (names[i] == "output_to_prompt_ratio") {
        features[names[i]] = values[i];
      } else {
        features[names[i]] = static_cast<long long>(values[i]);
      }
    }
    line["features"] = std::move(features);
    line["label"] = std::string(to_string(row.label));
    line["family"] = std::string(to_string(row.family));
    out << line.dump() << '\n';
  }
  if (!out) {
    throw DataError("failed while writing dataset file: " + path.string());
  }
}

std::vector<DatasetRow> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open dataset file: " + path.string());
  }
  std::vector<DatasetRow> rows;
  std::string line;
  size_t line_number = 0;
  const auto& names = feature_names();
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    nlohmann::json object;
    try {
      object = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": invalid dataset JSON: " + e.what());
    }
    if (!object.is_object() || !object.contains("features") ||
        !object.contains("label") || !object.contains("family")) {
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": dataset rows need 'features', 'label', 'family'");
    }
    DatasetRow row;
    std::array<double, kFeatureCount> values{};
    const auto& features = object["features"];
    for (int i = 0; i < kFeatureCount; ++i) {
      if (!features.contains(names[i]) || !features[names[i]].is_number()) {
        throw DataError(path.string() + ":" + std::to_string(line_number) +
                        ": missing feature '" + names[i] + "'");
      }
      values[static_cast<size_t>(i)] = features[names[i]].get<double>();
    }
    row.features = features_from_array(values);
    row.label = mode_from_string(object["label"].get<std::string>());
    if (oracle_class_index(row.label) < 0) {
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": label outside the five-class space");
    }
    row.family = family_from_string(object["family"].get<std::string>());
    rows.push_back(row);
  }
  return rows;
}

SplitDataset stratified_split(const std::vector<DatasetRow>& rows,
                              double test_fraction, std::uint64_t seed) {
  if (test_fraction < 0.0 || test_fraction >= 1.0) {
    throw ConfigError("test_fraction must be in [0, 1)");
  }
  // Group row indices by class, shuffle each group with the seeded engine,
  // then send the first test_fraction of each group to the test set.
  std::array<std::vector<size_t>, kOracleClassCount> by_class;
  for (size_t i = 0; i < rows.size(); ++i) {
    by_class[static_cast<size_t>(oracle_class_index(rows[i].label))]
        .push_back(i);
  }
  std::mt19937_64 rng(seed);
  SplitDataset split;
  for (auto& group : by_class) {
    // Fisher-Yates with raw engine draws so the order is identical on every
    // platform.
    for (size_t i = group.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(rng() % i);
      std::swap(group[i - 1], group[j]);
    }
    const size_t test_count =
        static_cast<size_t>(test_fraction * static_cast<double>(group.size()));
    for (size_t i = 0; i < group.size(); ++i) {
      if (i < test_count) {
        split.test.push_back(rows[group[i]]);
      } else {
        split.train.push_back(rows[group[i]]);
      }
    }
  }
  return split;
}

ConfusionMatrix confusion_matrix(
    const std::function<InferenceMode(const FeatureVector&)>& predictor,
    const std::vector<DatasetRow>& rows) {
  if (rows.empty()) {
    throw DataError("confusion_matrix: empty evaluation set");
  }
  ConfusionMatrix matrix;
  int diagonal = 0;
  for (const auto& row : rows) {
    const int truth = oracle_class_index(row.label);
    const int predicted = oracle_class_index(predictor(row.features));
    if (truth < 0 || predicted < 0) {
      throw DataError("confusion_matrix: class outside the five-class space");
    }
    matrix.counts[static_cast<size_t>(truth)][static_cast<size_t>(predicted)]++;
    if (truth == predicted) ++diagonal;
  }
  matrix.total = static_cast<int>(rows.size());
  matrix.accuracy = static_cast<double>(diagonal) / matrix.total;
  return matrix;
}

}  // namespace modeswitch

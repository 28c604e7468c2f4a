#pragma once

#include <array>
#include <string>

#include "modeswitch/domain.hpp"

namespace modeswitch {

// Request-time features available before generation begins. Extraction is a
// pure function of the descriptor.
//
// Integer codes: workload_tag_code is the WorkloadFamily enumeration index
// (-1 when untagged); benchmark_family_code indexes the benchmark subsequence
// MMLUPro=0, GSM8K=1, TruthfulQA=2, GPQA=3, MLU=4 (-1 when not a benchmark);
// eval_mode_code is 0 for generation-scored and 1 for choice-scored work.
struct FeatureVector {
  int prompt_tokens = 0;
  int expected_output_tokens = 0;
  int shared_prefix = 0;
  int memory_pressure = 0;
  int batch_pressure = 1;
  int workload_tag_code = -1;
  double output_to_prompt_ratio = 0.0;
  int benchmark_family_code = -1;
  int eval_mode_code = 0;
};

inline constexpr int kFeatureCount = 9;

/// Feature order used everywhere a FeatureVector becomes a flat array
/// (learned models, dataset files).
std::array<double, kFeatureCount> to_array(const FeatureVector& features);

/// Names matching to_array's order, for serialization and reports.
const std::array<std::string, kFeatureCount>& feature_names();

FeatureVector features_from_array(const std::array<double, kFeatureCount>& values);

/// Thresholds for the rule classifier. The defaults sit midway between the
/// synthetic grid's short and long token counts (128/1024 prompts, 32/128
/// outputs), so the four grid quadrants classify as intended.
struct ClassifierConfig {
  int long_prompt_threshold = 512;
  int long_output_threshold = 64;
  double decode_heavy_ratio = 0.5;
  int batch_threshold = 2;
};

void validate(const ClassifierConfig& config);

/// Pure, deterministic feature extraction.
FeatureVector extract_features(const RequestDescriptor& request);

/// Total, deterministic classification. Precedence: Batched > SharedPrefix >
/// MemoryPressure > DecodeHeavy > PrefillHeavy > Balanced.
///
/// DecodeHeavy means (output >= long_output_threshold and ratio >=
/// decode_heavy_ratio) or (output strictly above the threshold with a short
/// prompt). PrefillHeavy means a long prompt with output below the output
/// threshold.
WorkloadClass classify(const FeatureVector& features,
                       const ClassifierConfig& config);

/// Family used for profile lookups. The workload tag wins when present;
/// untagged requests map through their flags and shape quadrant.
WorkloadFamily resolve_family(const RequestDescriptor& request,
                              const ClassifierConfig& config);

}  // namespace modeswitch

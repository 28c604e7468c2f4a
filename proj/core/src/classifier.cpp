#include "modeswitch/classifier.hpp"

#include <cmath>

namespace modeswitch {

std::array<double, kFeatureCount> to_array(const FeatureVector& features) {
  return {static_cast<double>(features.prompt_tokens),
          static_cast<double>(features.expected_output_tokens),
          static_cast<double>(features.shared_prefix),
          static_cast<double>(features.memory_pressure),
          static_cast<double>(features.batch_pressure),
          static_cast<double>(features.workload_tag_code),
          features.output_to_prompt_ratio,
          static_cast<double>(features.benchmark_family_code),
          static_cast<double>(features.eval_mode_code)};
}

const std::array<std::string, kFeatureCount>& feature_names() {
  static const std::array<std::string, kFeatureCount> names = {
      "prompt_tokens",       "expected_output_tokens",
      "shared_prefix",       "memory_pressure",
      "batch_pressure",      "workload_tag_code",
      "output_to_prompt_ratio", "benchmark_family_code",
      "eval_mode_code"};
  return names;
}

FeatureVector features_from_array(
    const std::array<double, kFeatureCount>& values) {
  FeatureVector features;
  features.prompt_tokens = static_cast<int>(std::llround(values[0]));
  features.expected_output_tokens = static_cast<int>(std::llround(values[1]));
  features.shared_prefix = static_cast<int>(std::llround(values[2]));
  features.memory_pressure = static_cast<int>(std::llround(values[3]));
  features.batch_pressure = static_cast<int>(std::llround(values[4]));
  features.workload_tag_code = static_cast<int>(std::llround(values[5]));
  features.output_to_prompt_ratio = values[6];
  features.benchmark_family_code = static_cast<int>(std::llround(values[7]));
  features.eval_mode_code = static_cast<int>(std::llround(values[8]));
  return features;
}

void validate(const ClassifierConfig& config) {
  if (config.long_prompt_threshold < 1 || config.long_output_threshold < 1 ||
      config.batch_threshold < 1) {
    throw ConfigError("classifier thresholds must be >= 1");
  }
  if (!(config.decode_heavy_ratio > 0.0)) {
    throw ConfigError("decode_heavy_ratio must be > 0");
  }
}

namespace {

int benchmark_code(WorkloadFamily family) {
  switch (family) {
    case WorkloadFamily::MMLUPro: return 0;
    case WorkloadFamily::GSM8K: return 1;
    case WorkloadFamily::TruthfulQA: return 2;
    case WorkloadFamily::GPQA: return 3;
    case WorkloadFamily::MLU: return 4;
    default: return -1;
  }
}

}  // namespace

FeatureVector extract_features(const RequestDescriptor& request) {
  FeatureVector features;
  features.prompt_tokens = request.prompt_tokens;
  features.expected_output_tokens = request.expected_output_tokens;
  features.shared_prefix = request.shared_prefix ? 1 : 0;
  features.memory_pressure = request.memory_pressure ? 1 : 0;
  features.batch_pressure = request.batch_pressure;
  features.output_to_prompt_ratio =
      static_cast<double>(request.expected_output_tokens) /
      static_cast<double>(request.prompt_tokens);
  if (request.workload_tag) {
    features.workload_tag_code = static_cast<int>(*request.workload_tag);
    features.benchmark_family_code = benchmark_code(*request.workload_tag);
    features.eval_mode_code = is_choice_scored(*request.workload_tag) ? 1 : 0;
  }
  return features;
}

WorkloadClass classify(const FeatureVector& features,
                       const ClassifierConfig& config) {
  validate(config);
  if (features.batch_pressure >= config.batch_threshold) {
    return WorkloadClass::Batched;
  }
  if (features.shared_prefix) {
    return WorkloadClass::SharedPrefix;
  }
  if (features.memory_pressure) {
    return WorkloadClass::MemoryPressure;
  }
  const int output = features.expected_output_tokens;
  const bool decode_heavy =
      (output >= config.long_output_threshold &&
       features.output_to_prompt_ratio >= config.decode_heavy_ratio) ||
      (output > config.long_output_threshold &&
       features.prompt_tokens < config.long_prompt_threshold);
  if (decode_heavy) {
    return WorkloadClass::DecodeHeavy;
  }
  if (features.prompt_tokens >= config.long_prompt_threshold &&
      output < config.long_output_threshold) {
    return WorkloadClass::PrefillHeavy;
  }
  return WorkloadClass::Balanced;
}

WorkloadFamily resolve_family(const RequestDescriptor& request,
                              const ClassifierConfig& config) {
  if (request.workload_tag) {
    return *request.workload_tag;
  }
  if (request.shared_prefix) {
    return WorkloadFamily::SharedPrefixChat;
  }
  if (request.memory_pressure) {
    return WorkloadFamily::MemoryPressureLongContext;
  }
  const bool long_prompt =
      request.prompt_tokens >= config.long_prompt_threshold;
  const bool long_output =
      request.expected_output_tokens >= config.long_output_threshold;
  if (long_prompt) {
    return long_output ? WorkloadFamily::SyntheticLL
                       : WorkloadFamily::SyntheticLS;
  }
  return long_output ? WorkloadFamily::SyntheticSL
                     : WorkloadFamily::SyntheticSS;
}

}  // namespace modeswitch

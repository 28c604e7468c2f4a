#include "modeswitch/domain.hpp"

namespace modeswitch {

bool is_benchmark_family(WorkloadFamily family) {
  switch (family) {
    case WorkloadFamily::MMLUPro:
    case WorkloadFamily::GSM8K:
    case WorkloadFamily::TruthfulQA:
    case WorkloadFamily::GPQA:
    case WorkloadFamily::MLU:
      return true;
    default:
      return false;
  }
}

bool is_choice_scored(WorkloadFamily family) {
  return is_benchmark_family(family) && family != WorkloadFamily::GSM8K;
}

bool requires_batching(InferenceMode mode) {
  return mode == InferenceMode::ContinuousBatching ||
         mode == InferenceMode::INT8PlusContinuousBatching;
}

std::string_view to_string(WorkloadFamily family) {
  switch (family) {
    case WorkloadFamily::SyntheticSS: return "SyntheticSS";
    case WorkloadFamily::SyntheticSL: return "SyntheticSL";
    case WorkloadFamily::SyntheticLS: return "SyntheticLS";
    case WorkloadFamily::SyntheticLL: return "SyntheticLL";
    case WorkloadFamily::SharedPrefixChat: return "SharedPrefixChat";
    case WorkloadFamily::MemoryPressureLongContext:
      return "MemoryPressureLongContext";
    case WorkloadFamily::MMLUPro: return "MMLUPro";
    case WorkloadFamily::GSM8K: return "GSM8K";
    case WorkloadFamily::TruthfulQA: return "TruthfulQA";
    case WorkloadFamily::GPQA: return "GPQA";
    case WorkloadFamily::MLU: return "MLU";
  }
  throw DataError("unknown WorkloadFamily value");
}

std::string_view to_string(InferenceMode mode) {
  switch (mode) {
    case InferenceMode::FP16: return "fp16";
    case InferenceMode::INT8: return "int8";
    case InferenceMode::GPTQ4: return "gptq4";
    case InferenceMode::AWQ4: return "awq4";
    case InferenceMode::SpeculativeDecoding: return "speculative_decoding";
    case InferenceMode::PrefixCaching: return "prefix_caching";
    case InferenceMode::ChunkedPrefill: return "chunked_prefill";
    case InferenceMode::ContinuousBatching: return "continuous_batching";
    case InferenceMode::CudaGraphs: return "cuda_graphs";
    case InferenceMode::KVCacheCompression: return "kv_cache_compression";
    case InferenceMode::GPTQPlusPrefixCaching: return "gptq_prefix_caching";
    case InferenceMode::INT8PlusContinuousBatching:
      return "int8_continuous_batching";
  }
  throw DataError("unknown InferenceMode value");
}

std::string_view to_string(WorkloadClass cls) {
  switch (cls) {
    case WorkloadClass::Batched: return "batched";
    case WorkloadClass::SharedPrefix: return "shared_prefix";
    case WorkloadClass::MemoryPressure: return "memory_pressure";
    case WorkloadClass::PrefillHeavy: return "prefill_heavy";
    case WorkloadClass::DecodeHeavy: return "decode_heavy";
    case WorkloadClass::Balanced: return "balanced";
  }
  throw DataError("unknown WorkloadClass value");
}

WorkloadFamily family_from_string(std::string_view name) {
  for (WorkloadFamily family : all_families()) {
    if (to_string(family) == name) return family;
  }
  throw DataError("unknown workload family: '" + std::string(name) + "'");
}

InferenceMode mode_from_string(std::string_view name) {
  for (InferenceMode mode : all_modes()) {
    if (to_string(mode) == name) return mode;
  }
  throw DataError("unknown inference mode: '" + std::string(name) + "'");
}

WorkloadClass workload_class_from_string(std::string_view name) {
  for (WorkloadClass cls :
       {WorkloadClass::Batched, WorkloadClass::SharedPrefix,
        WorkloadClass::MemoryPressure, WorkloadClass::PrefillHeavy,
        WorkloadClass::DecodeHeavy, WorkloadClass::Balanced}) {
    if (to_string(cls) == name) return cls;
  }
  throw DataError("unknown workload class: '" + std::string(name) + "'");
}

void validate(const RequestDescriptor& request) {
  if (request.request_id.empty()) {
    throw DataError("request_id must be nonempty");
  }
  if (request.prompt_tokens < 1) {
    throw DataError("request '" + request.request_id +
                    "': prompt_tokens must be >= 1");
  }
  if (request.expected_output_tokens < 1) {
    throw DataError("request '" + request.request_id +
                    "': expected_output_tokens must be >= 1");
  }
  if (request.batch_pressure < 1) {
    throw DataError("request '" + request.request_id +
                    "': batch_pressure must be >= 1");
  }
}

double speedup(double fp16_latency_ms, double mode_latency_ms) {
  if (!(fp16_latency_ms > 0.0) || !(mode_latency_ms > 0.0)) {
    throw DataError("speedup requires positive latencies");
  }
  return fp16_latency_ms / mode_latency_ms;
}

double ratio_vs_baseline(double mode_value, double fp16_value) {
  if (!(fp16_value > 0.0)) {
    throw DataError("ratio_vs_baseline requires a positive baseline value");
  }
  if (mode_value < 0.0) {
    throw DataError("ratio_vs_baseline requires a nonnegative mode value");
  }
  return mode_value / fp16_value;
}

}  // namespace modeswitch

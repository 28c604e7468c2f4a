#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace modeswitch {

// Error hierarchy. ConfigError covers bad flags/settings, DataError covers
// malformed or inconsistent input files and simulation-time data problems.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

// Workload families: four synthetic prompt/output shapes, two deployment
// patterns, and five scored benchmark suites.
enum class WorkloadFamily : int {
  SyntheticSS = 0,
  SyntheticSL,
  SyntheticLS,
  SyntheticLL,
  SharedPrefixChat,
  MemoryPressureLongContext,
  MMLUPro,
  GSM8K,
  TruthfulQA,
  GPQA,
  MLU,
};

inline constexpr int kFamilyCount = 11;

constexpr std::array<WorkloadFamily, kFamilyCount> all_families() {
  return {WorkloadFamily::SyntheticSS,
          WorkloadFamily::SyntheticSL,
          WorkloadFamily::SyntheticLS,
          WorkloadFamily::SyntheticLL,
          WorkloadFamily::SharedPrefixChat,
          WorkloadFamily::MemoryPressureLongContext,
          WorkloadFamily::MMLUPro,
          WorkloadFamily::GSM8K,
          WorkloadFamily::TruthfulQA,
          WorkloadFamily::GPQA,
          WorkloadFamily::MLU};
}

/// True for the five scored benchmark families.
bool is_benchmark_family(WorkloadFamily family);

/// True for benchmark families scored by answer choice rather than by
/// generated text (all benchmarks except GSM8K).
bool is_choice_scored(WorkloadFamily family);

// Serving configurations a request can be routed to. FP16 is the reference
// baseline; every ratio metric is relative to it. The declaration order is
// load-bearing: it is the deterministic tie-break order for the oracle.
enum class InferenceMode : int {
  FP16 = 0,
  INT8,
  GPTQ4,
  AWQ4,
  SpeculativeDecoding,
  PrefixCaching,
  ChunkedPrefill,
  ContinuousBatching,
  CudaGraphs,
  KVCacheCompression,
  GPTQPlusPrefixCaching,
  INT8PlusContinuousBatching,
};

inline constexpr int kModeCount = 12;

constexpr std::array<InferenceMode, kModeCount> all_modes() {
  return {InferenceMode::FP16,
          InferenceMode::INT8,
          InferenceMode::GPTQ4,
          InferenceMode::AWQ4,
          InferenceMode::SpeculativeDecoding,
          InferenceMode::PrefixCaching,
          InferenceMode::ChunkedPrefill,
          InferenceMode::ContinuousBatching,
          InferenceMode::CudaGraphs,
          InferenceMode::KVCacheCompression,
          InferenceMode::GPTQPlusPrefixCaching,
          InferenceMode::INT8PlusContinuousBatching};
}

/// The six modes the online controller chooses among (five optimized modes
/// plus the FP16 emergency fallback).
constexpr std::array<InferenceMode, 6> controller_candidates() {
  return {InferenceMode::GPTQ4,
          InferenceMode::SpeculativeDecoding,
          InferenceMode::GPTQPlusPrefixCaching,
          InferenceMode::INT8PlusContinuousBatching,
          InferenceMode::INT8,
          InferenceMode::FP16};
}

/// The five-class label space used by the oracle dataset and the learned
/// routers. Order is the fixed class order for vote/argmax tie-breaking.
constexpr std::array<InferenceMode, 5> oracle_classes() {
  return {InferenceMode::FP16, InferenceMode::INT8, InferenceMode::GPTQ4,
          InferenceMode::SpeculativeDecoding,
          InferenceMode::GPTQPlusPrefixCaching};
}

/// Modes that only make sense when several requests are co-scheduled; their
/// profile cells apply to requests with batch_pressure > 1.
bool requires_batching(InferenceMode mode);

// Coarse request categories assigned by the rule classifier. Exactly one per
// request.
enum class WorkloadClass : int {
  Batched = 0,
  SharedPrefix,
  MemoryPressure,
  PrefillHeavy,
  DecodeHeavy,
  Balanced,
};

// Canonical string forms. Families use their type-level names (these also
// appear in trace files and CLI flags); modes use lowercase tokens like
// "gptq4" (these appear in profiles, decisions files and --policy specs).
std::string_view to_string(WorkloadFamily family);
std::string_view to_string(InferenceMode mode);
std::string_view to_string(WorkloadClass cls);

WorkloadFamily family_from_string(std::string_view name);
InferenceMode mode_from_string(std::string_view name);
WorkloadClass workload_class_from_string(std::string_view name);

/// One incoming request's routable features. Token counts arrive
/// precomputed; there is no tokenizer in this system.
struct RequestDescriptor {
  std::string request_id;
  int prompt_tokens = 1;
  int expected_output_tokens = 1;
  bool shared_prefix = false;
  bool memory_pressure = false;
  int batch_pressure = 1;  // co-scheduled requests, 1 = single request
  std::optional<WorkloadFamily> workload_tag;
};

/// Throws DataError if a descriptor violates its field invariants
/// (token counts >= 1, batch_pressure >= 1, nonempty id).
void validate(const RequestDescriptor& request);

/// Simulated per-request measurements.
struct RequestMetrics {
  double latency_ms = 0.0;
  double energy_per_token_j = 0.0;
  double throughput_tps = 0.0;
  double memory_ratio = 1.0;
  double quality_delta_pp = 0.0;  // percentage points vs FP16
  double routing_overhead_ms = 0.0;
};

/// FP16 latency divided by mode latency; > 1.0 is faster.
/// Throws DataError on non-positive inputs.
double speedup(double fp16_latency_ms, double mode_latency_ms);

/// Mode value divided by the FP16 value; < 1.0 means the mode uses less.
/// Throws DataError when the baseline value is not positive.
double ratio_vs_baseline(double mode_value, double fp16_value);

}  // namespace modeswitch

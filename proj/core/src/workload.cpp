#include "modeswitch/workload.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace modeswitch {

FamilyShape family_nominal_shape(WorkloadFamily family) {
  switch (family) {
    case WorkloadFamily::SyntheticSS: return {128, 32, false, false};
    case WorkloadFamily::SyntheticSL: return {128, 128, false, false};
    case WorkloadFamily::SyntheticLS: return {1024, 32, false, false};
    case WorkloadFamily::SyntheticLL: return {1024, 128, false, false};
    case WorkloadFamily::SharedPrefixChat: return {1024, 128, true, false};
    case WorkloadFamily::MemoryPressureLongContext:
      return {2048, 64, false, true};
    case WorkloadFamily::MMLUPro: return {400, 16, false, false};
    case WorkloadFamily::GSM8K: return {250, 256, false, false};
    case WorkloadFamily::TruthfulQA: return {200, 64, false, false};
    case WorkloadFamily::GPQA: return {500, 16, false, false};
    case WorkloadFamily::MLU: return {300, 16, false, false};
  }
  throw DataError("unknown WorkloadFamily value");
}

void validate(const TraceSpec& spec) {
  if (spec.jitter < 0.0 || spec.jitter >= 0.5) {
    throw ConfigError("trace jitter must be in [0, 0.5)");
  }
  for (const auto& [family, count] : spec.counts) {
    (void)family;
    if (count < 0) {
      throw ConfigError("trace counts must be nonnegative");
    }
  }
  if (spec.batch_pressure < 1) {
    throw ConfigError("batch_pressure must be >= 1");
  }
  if (spec.batched_fraction < 0.0 || spec.batched_fraction > 1.0) {
    throw ConfigError("batched_fraction must be in [0, 1]");
  }
}

namespace {

// Uniform double in [0, 1) from raw engine output, identical on every
// platform (std::uniform_real_distribution is not portable).
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int jittered(int nominal, double jitter, std::mt19937_64& rng) {
  if (jitter == 0.0) return nominal;
  const double factor = 1.0 - jitter + 2.0 * jitter * unit_double(rng);
  return std::max(1, static_cast<int>(std::llround(nominal * factor)));
}

}  // namespace

std::vector<RequestDescriptor> generate_trace(const TraceSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  std::vector<RequestDescriptor> trace;

  // Families are generated in enumeration order so that a given spec always
  // produces the same file.
  for (WorkloadFamily family : all_families()) {
    auto it = spec.counts.find(family);
    if (it == spec.counts.end() || it->second == 0) continue;
    const int count = it->second;
    const FamilyShape shape = family_nominal_shape(family);
    const int batched_count =
        static_cast<int>(std::llround(spec.batched_fraction * count));
    for (int i = 0; i < count; ++i) {
      RequestDescriptor request;
      request.request_id =
          std::string(to_string(family)) + "-" + std::to_string(i);
      request.prompt_tokens = jittered(shape.prompt_tokens, spec.jitter, rng);
      request.expected_output_tokens =
          jittered(shape.output_tokens, spec.jitter, rng);
      request.shared_prefix = shape.shared_prefix;
      request.memory_pressure = shape.memory_pressure;
      request.batch_pressure = i < batched_count ? spec.batch_pressure : 1;
      request.workload_tag = family;
      validate(request);
      trace.push_back(std::move(request));
    }
  }
  return trace;
}

std::vector<RequestDescriptor> balanced_family_trace(int n_per_family,
                                                     std::uint64_t seed,
                                                     double jitter) {
  if (n_per_family < 1) {
    throw ConfigError("balanced_family_trace needs n_per_family >= 1");
  }
  TraceSpec spec;
  spec.jitter = jitter;
  spec.seed = seed;
  for (WorkloadFamily family : all_families()) {
    spec.counts[family] = n_per_family;
  }
  return generate_trace(spec);
}

}  // namespace modeswitch

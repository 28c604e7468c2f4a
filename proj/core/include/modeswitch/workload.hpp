#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "modeswitch/domain.hpp"

namespace modeswitch {

/// Nominal (prompt, output) token counts for a family's canonical request.
struct FamilyShape {
  int prompt_tokens = 0;
  int output_tokens = 0;
  bool shared_prefix = false;
  bool memory_pressure = false;
};

/// The shapes the generator emits at zero jitter. The synthetic grid uses
/// the 128/1024-prompt by 32/128-output corners; benchmark shapes are this
/// project's conventions (choice benchmarks short-output, GSM8K
/// long-generation).
FamilyShape family_nominal_shape(WorkloadFamily family);

struct TraceSpec {
  std::map<WorkloadFamily, int> counts;
  double jitter = 0.10;        // uniform token jitter, fraction in [0, 0.5)
  std::uint64_t seed = 0;
  int batch_pressure = 4;      // batch level given to batched slices
  double batched_fraction = 0.0;  // leading fraction of each family batched
};

void validate(const TraceSpec& spec);

/// Deterministic, seeded trace generation: same spec -> byte-identical
/// trace. Requests are tagged with their family; request ids are
/// "<Family>-<index>".
std::vector<RequestDescriptor> generate_trace(const TraceSpec& spec);

/// generate_trace with the same count for all 11 families.
std::vector<RequestDescriptor> balanced_family_trace(int n_per_family,
                                                     std::uint64_t seed,
                                                     double jitter = 0.10);

}  // namespace modeswitch

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "modeswitch/classifier.hpp"
#include "modeswitch/domain.hpp"
#include "modeswitch/profile.hpp"
#include "modeswitch/routing.hpp"

namespace modeswitch {

/// Instantaneous power samples, e.g. from a 50 ms GPU power poll.
/// Timestamps must be strictly increasing.
struct PowerTrace {
  struct Sample {
    double timestamp_ms = 0.0;
    double power_w = 0.0;
  };
  std::vector<Sample> samples;
};

/// CSV with header "timestamp_ms,power_w".
PowerTrace read_power_trace(const std::filesystem::path& path);
void write_power_trace(const PowerTrace& trace,
                       const std::filesystem::path& path);

/// Trapezoidal integration of power over time, divided by generated tokens.
/// Exact for piecewise-linear power. Needs at least two samples.
double energy_from_power_trace(const PowerTrace& trace, int tokens);

struct SimOptions {
  bool fallback_enabled = false;   // missing/unusable cell -> FP16 instead of error
  bool zero_overhead = false;      // ignore measured decision overhead
  double extra_overhead_ms = 0.0;  // injected synthetic routing overhead
  ClassifierConfig classifier;     // family resolution for untagged traffic
};

struct SimRequestResult {
  std::string request_id;
  RoutingDecision decision;
  InferenceMode simulated_mode = InferenceMode::FP16;  // FP16 when fallback hit
  WorkloadFamily family = WorkloadFamily::SyntheticSS;
  double fp16_latency_ms = 0.0;
  double mode_latency_ms = 0.0;
  double speedup = 1.0;
  double energy_ratio = 1.0;
  double memory_ratio = 1.0;
  double quality_delta_pp = 0.0;
  double energy_j = 0.0;
  double overhead_ms = 0.0;  // effective overhead charged to latency
  bool constraint_violated = false;
  bool used_synthesized_cell = false;
  bool fallback_used = false;
};

struct FamilySummary {
  WorkloadFamily family = WorkloadFamily::SyntheticSS;
  int count = 0;
  double mean_speedup = 0.0;
  double mean_energy_ratio = 0.0;
  double mean_memory_ratio = 0.0;
  double mean_quality_delta_pp = 0.0;
};

struct PolicyReport {
  std::string policy;
  int request_count = 0;
  double mean_speedup = 0.0;
  double mean_energy_ratio = 0.0;
  double mean_memory_ratio = 0.0;
  double mean_quality_delta_pp = 0.0;
  // Secondary aggregation: total FP16 latency over total mode latency.
  double aggregate_latency_speedup = 0.0;
  std::vector<FamilySummary> per_family;
  // Collapsed evaluation: one vote per family (mean of per-family means).
  double collapsed_mean_speedup = 0.0;
  double collapsed_mean_energy_ratio = 0.0;
  double oracle_match_rate = 0.0;
  double constraint_violation_rate = 0.0;
  double mean_overhead_ms = 0.0;
  double synthesized_cell_usage = 0.0;
  int fallback_count = 0;
};

/// Replays one already-routed request against the profile. The mode latency
/// is fp16_latency / cell speedup + routing overhead. A missing cell, an
/// infeasible cell, or a batching-only mode on an unbatched request is a
/// hard error unless options.fallback_enabled, in which case the request is
/// simulated as FP16 and flagged.
SimRequestResult simulate_request(const RequestDescriptor& request,
                                  const RoutingDecision& decision,
                                  const ProfileTable& table,
                                  const ConstraintSet& constraints,
                                  const SimOptions& options);

struct PolicyRunResult {
  PolicyReport report;
  std::vector<SimRequestResult> results;  // in trace order
};

/// Routes and simulates every request; all means are unweighted over
/// requests; oracle_match_rate compares against the five-class oracle on the
/// same table and constraints.
PolicyRunResult run_policy(const std::vector<RequestDescriptor>& trace,
                           const RoutingPolicy& policy,
                           const ProfileTable& table,
                           const ConstraintSet& constraints,
                           const SimOptions& options);

struct PolicyComparison {
  std::vector<PolicyRunResult> runs;     // one per input policy
  std::vector<double> oracle_capture;    // mean speedup / oracle mean speedup
  double oracle_mean_speedup = 0.0;
};

PolicyComparison compare_policies(
    const std::vector<RequestDescriptor>& trace,
    const std::vector<const RoutingPolicy*>& policies,
    const ProfileTable& table, const ConstraintSet& constraints,
    const SimOptions& options);

/// The benchmark quality gate: collapsed mean quality delta across routed
/// benchmark families must stay within +-threshold percentage points.
/// Traces without benchmark traffic pass trivially.
struct QualityGateResult {
  bool passed = true;
  double collapsed_benchmark_delta_pp = 0.0;
  std::vector<FamilySummary> benchmark_families;
};

QualityGateResult evaluate_quality_gate(
    const std::vector<SimRequestResult>& results, double threshold_pp = 1.5);

}  // namespace modeswitch

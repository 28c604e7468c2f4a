#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include "modeswitch/domain.hpp"

namespace modeswitch {

// Whether the numbers in a profile cell come from real measurements or were
// synthesized to fill gaps. Synthesized cells are flagged in every report.
enum class Provenance : int {
  Measured = 0,
  Synthesized,
};

std::string_view to_string(Provenance provenance);
Provenance provenance_from_string(std::string_view name);

/// Optional measurement anchor attached to a cell: the absolute latency and
/// throughput behind the cell's ratios. The validator checks that
/// latency * throughput recovers the token count within 2%.
struct MeasurementAnchor {
  double latency_s = 0.0;
  double throughput_tps = 0.0;
  double tokens = 0.0;
};

/// Measured (or synthesized) performance of one (mode, family) pair,
/// relative to FP16 on the same family.
struct ModeProfileCell {
  InferenceMode mode = InferenceMode::FP16;
  WorkloadFamily family = WorkloadFamily::SyntheticSS;
  double latency_speedup = 1.0;
  double energy_ratio = 1.0;
  double memory_ratio = 1.0;
  double quality_delta_pp = 0.0;
  bool feasible = true;
  Provenance provenance = Provenance::Measured;
  std::optional<MeasurementAnchor> anchor;
};

/// Converts token counts into an absolute FP16 baseline latency so that
/// per-request simulation is possible. Rates are per token.
struct BaselineCostModel {
  double prefill_ms_per_token = 0.4;
  double decode_ms_per_token = 11.5;
  double fixed_overhead_ms = 20.0;
  double fp16_energy_j_per_token = 3.0;
  double fp16_peak_memory_mb = 16384.0;
};

/// Immutable-after-load store of profile cells keyed by (mode, family).
/// Lookup of a missing pair is an error, never a silent default.
class ProfileTable {
 public:
  ProfileTable() = default;

  void insert(const ModeProfileCell& cell);

  bool contains(InferenceMode mode, WorkloadFamily family) const;

  /// Returns the cell or throws DataError naming the missing coordinates.
  const ModeProfileCell& lookup(InferenceMode mode,
                                WorkloadFamily family) const;

  /// Families with at least one cell, in enumeration order.
  std::vector<WorkloadFamily> families() const;

  const std::vector<ModeProfileCell>& cells() const { return cells_; }

  BaselineCostModel& baseline_costs() { return baseline_costs_; }
  const BaselineCostModel& baseline_costs() const { return baseline_costs_; }

  /// Checks every table invariant: positive ratios, an FP16 identity cell
  /// for each family present, and anchor consistency. Throws DataError with
  /// the offending cell coordinates.
  void validate() const;

 private:
  std::vector<ModeProfileCell> cells_;
  std::map<std::pair<int, int>, size_t> index_;
  BaselineCostModel baseline_costs_;
};

/// Loads and validates a profile JSON file.
ProfileTable load_profile(const std::filesystem::path& path);

/// Writes the identical schema load_profile reads; load(save(t)) == t.
void save_profile(const ProfileTable& table,
                  const std::filesystem::path& path);

/// FP16 baseline latency for a request under a cost model:
/// fixed + prefill_rate * prompt_tokens + decode_rate * output_tokens.
double fp16_latency(const BaselineCostModel& costs,
                    const RequestDescriptor& request);

/// The profile shipped with this project: measured values where published
/// numbers exist, synthesized-and-flagged values elsewhere. See the README
/// for the exact conventions.
ProfileTable default_profile();

}  // namespace modeswitch

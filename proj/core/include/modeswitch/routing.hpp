#pragma once

#include <memory>
#include <string>
#include <vector>

#include "modeswitch/classifier.hpp"
#include "modeswitch/domain.hpp"
#include "modeswitch/profile.hpp"

namespace modeswitch {

// Provenance of a routing decision: which rule fired, how the oracle chose,
// or which non-rule policy produced it.
enum class RoutingReason : int {
  Rule1Batched = 0,
  Rule2SharedPrefix,
  Rule3MemoryPressure,
  Rule4SyntheticShape,
  Rule5DecodeHeavy,
  Rule6ChoiceBenchmark,
  Rule7Default,
  OracleFeasibleFastest,
  OracleFallbackFP16,
  Static,
  LearnedVote,
};

std::string_view to_string(RoutingReason reason);
RoutingReason routing_reason_from_string(std::string_view name);

struct RoutingDecision {
  InferenceMode mode = InferenceMode::FP16;
  RoutingReason reason = RoutingReason::Static;
  double overhead_ms = 0.0;  // wall-clock of the decision itself
};

/// Feasibility envelope for the oracle and for violation accounting.
/// Quality is a one-sided floor (improvements always pass); energy and
/// memory are one-sided caps.
struct ConstraintSet {
  double quality_floor_pp = -1.5;
  double energy_ratio_max = 1.0;
  double memory_ratio_max = 1.10;
};

void validate(const ConstraintSet& constraints);

bool satisfies(const ModeProfileCell& cell, const ConstraintSet& constraints);

/// The seven-rule priority policy. Applies rules strictly in order:
///   1. Batched                  -> INT8 + continuous batching
///   2. SharedPrefix             -> GPTQ + prefix caching
///   3. MemoryPressure           -> GPTQ 4-bit
///   4. tag in {SS, LS, LL}      -> GPTQ 4-bit
///   5. DecodeHeavy or tag GSM8K -> speculative decoding
///   6. choice-scored benchmark, or prefill-heavy with a benchmark tag
///                               -> INT8
///   7. everything else          -> INT8
/// The policy itself never returns FP16; the simulator applies the FP16
/// emergency fallback when a chosen mode has no usable profile cell.
RoutingDecision route_rule(const RequestDescriptor& request, WorkloadClass cls,
                           const ClassifierConfig& config);

/// Constraint-aware oracle: among candidates whose (candidate, family) cell
/// exists, is feasible, and satisfies the constraints, picks the highest
/// latency_speedup; ties break on lower energy_ratio, then on InferenceMode
/// enumeration order. When no non-FP16 candidate survives and at least one
/// was offered, returns FP16 with reason OracleFallbackFP16.
///
/// FP16 must be in the candidate list and the family's FP16 identity cell
/// must exist (hard error otherwise). Candidates without a cell are skipped;
/// if `skipped` is non-null the gaps are recorded there.
RoutingDecision route_oracle(WorkloadFamily family, const ProfileTable& table,
                             const ConstraintSet& constraints,
                             const std::vector<InferenceMode>& candidates,
                             std::vector<InferenceMode>* skipped = nullptr);

/// Fixed-mode policy used for FP16 and all-one-mode baselines.
RoutingDecision route_static(InferenceMode mode);

/// Default candidate list for the oracle: the five-class label space.
std::vector<InferenceMode> default_oracle_candidates();

// A policy routes one request at a time and records the wall-clock cost of
// its own decision in overhead_ms. Policies are stateless after construction
// and safe to share across threads.
class RoutingPolicy {
 public:
  virtual ~RoutingPolicy() = default;
  virtual std::string name() const = 0;
  virtual RoutingDecision route(const RequestDescriptor& request) const = 0;
};

class RulePolicy final : public RoutingPolicy {
 public:
  explicit RulePolicy(ClassifierConfig config = {});
  std::string name() const override { return "rule"; }
  RoutingDecision route(const RequestDescriptor& request) const override;

 private:
  ClassifierConfig config_;
};

class StaticPolicy final : public RoutingPolicy {
 public:
  explicit StaticPolicy(InferenceMode mode);
  std::string name() const override;
  RoutingDecision route(const RequestDescriptor& request) const override;

 private:
  InferenceMode mode_;
};

class OraclePolicy final : public RoutingPolicy {
 public:
  OraclePolicy(const ProfileTable& table, ConstraintSet constraints,
               std::vector<InferenceMode> candidates =
                   default_oracle_candidates(),
               ClassifierConfig config = {});
  std::string name() const override { return "oracle"; }
  RoutingDecision route(const RequestDescriptor& request) const override;

 private:
  const ProfileTable& table_;
  ConstraintSet constraints_;
  std::vector<InferenceMode> candidates_;
  ClassifierConfig config_;
};

}  // namespace modeswitch

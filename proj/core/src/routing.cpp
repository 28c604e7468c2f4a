#include "modeswitch/routing.hpp"

#include <chrono>

namespace modeswitch {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

}  // namespace

std::string_view to_string(RoutingReason reason) {
  switch (reason) {
    case RoutingReason::Rule1Batched: return "rule1_batched";
    case RoutingReason::Rule2SharedPrefix: return "rule2_shared_prefix";
    case RoutingReason::Rule3MemoryPressure: return "rule3_memory_pressure";
    case RoutingReason::Rule4SyntheticShape: return "rule4_synthetic_shape";
    case RoutingReason::Rule5DecodeHeavy: return "rule5_decode_heavy";
    case RoutingReason::Rule6ChoiceBenchmark: return "rule6_choice_benchmark";
    case RoutingReason::Rule7Default: return "rule7_default";
    case RoutingReason::OracleFeasibleFastest:
      return "oracle_feasible_fastest";
    case RoutingReason::OracleFallbackFP16: return "oracle_fallback_fp16";
    case RoutingReason::Static: return "static";
    case RoutingReason::LearnedVote: return "learned_vote";
  }
  throw DataError("unknown RoutingReason value");
}

RoutingReason routing_reason_from_string(std::string_view name) {
  for (RoutingReason reason :
       {RoutingReason::Rule1Batched, RoutingReason::Rule2SharedPrefix,
        RoutingReason::Rule3MemoryPressure, RoutingReason::Rule4SyntheticShape,
        RoutingReason::Rule5DecodeHeavy, RoutingReason::Rule6ChoiceBenchmark,
        RoutingReason::Rule7Default, RoutingReason::OracleFeasibleFastest,
        RoutingReason::OracleFallbackFP16, RoutingReason::Static,
        RoutingReason::LearnedVote}) {
    if (to_string(reason) == name) return reason;
  }
  throw DataError("unknown routing reason: '" + std::string(name) + "'");
}

void validate(const ConstraintSet& constraints) {
  if (!(constraints.energy_ratio_max > 0.0) ||
      !(constraints.memory_ratio_max > 0.0)) {
    throw ConfigError("constraint caps must be positive");
  }
}

bool satisfies(const ModeProfileCell& cell, const ConstraintSet& constraints) {
  return cell.feasible &&
         cell.quality_delta_pp >= constraints.quality_floor_pp &&
         cell.energy_ratio <= constraints.energy_ratio_max &&
         cell.memory_ratio <= constraints.memory_ratio_max;
}

RoutingDecision route_rule(const RequestDescriptor& request, WorkloadClass cls,
                           const ClassifierConfig& config) {
  const auto start = Clock::now();
  (void)config;
  RoutingDecision decision;

  const auto tag = request.workload_tag;
  if (cls == WorkloadClass::Batched) {
    decision.mode = InferenceMode::INT8PlusContinuousBatching;
    decision.reason = RoutingReason::Rule1Batched;
  } else if (cls == WorkloadClass::SharedPrefix) {
    decision.mode = InferenceMode::GPTQPlusPrefixCaching;
    decision.reason = RoutingReason::Rule2SharedPrefix;
  } else if (cls == WorkloadClass::MemoryPressure) {
    decision.mode = InferenceMode::GPTQ4;
    decision.reason = RoutingReason::Rule3MemoryPressure;
  } else if (tag && (*tag == WorkloadFamily::SyntheticSS ||
                     *tag == WorkloadFamily::SyntheticLS ||
                     *tag == WorkloadFamily::SyntheticLL)) {
    decision.mode = InferenceMode::GPTQ4;
    decision.reason = RoutingReason::Rule4SyntheticShape;
  } else if (cls == WorkloadClass::DecodeHeavy ||
             (tag && *tag == WorkloadFamily::GSM8K)) {
    decision.mode = InferenceMode::SpeculativeDecoding;
    decision.reason = RoutingReason::Rule5DecodeHeavy;
  } else if (tag && (is_choice_scored(*tag) ||
                     (cls == WorkloadClass::PrefillHeavy &&
                      is_benchmark_family(*tag)))) {
    decision.mode = InferenceMode::INT8;
    decision.reason = RoutingReason::Rule6ChoiceBenchmark;
  } else {
    decision.mode = InferenceMode::INT8;
    decision.reason = RoutingReason::Rule7Default;
  }

  decision.overhead_ms = elapsed_ms(start);
  return decision;
}

RoutingDecision route_oracle(WorkloadFamily family, const ProfileTable& table,
                             const ConstraintSet& constraints,
                             const std::vector<InferenceMode>& candidates,
                             std::vector<InferenceMode>* skipped) {
  const auto start = Clock::now();
  validate(constraints);

  bool fp16_in_candidates = false;
  for (InferenceMode mode : candidates) {
    if (mode == InferenceMode::FP16) fp16_in_candidates = true;
  }
  if (!fp16_in_candidates) {
    throw DataError("oracle: FP16 must be in the candidate list");
  }
  if (!table.contains(InferenceMode::FP16, family)) {
    throw DataError("oracle: missing FP16 identity cell for family " +
                    std::string(to_string(family)));
  }

  const ModeProfileCell* best = nullptr;
  bool non_fp16_candidate_offered = false;
  bool non_fp16_feasible = false;
  for (InferenceMode mode : candidates) {
    if (mode != InferenceMode::FP16) non_fp16_candidate_offered = true;
    if (!table.contains(mode, family)) {
      if (skipped) skipped->push_back(mode);
      continue;
    }
    const ModeProfileCell& cell = table.lookup(mode, family);
    if (!satisfies(cell, constraints)) continue;
    if (mode != InferenceMode::FP16) non_fp16_feasible = true;
    if (best == nullptr) {
      best = &cell;
      continue;
    }
    // Highest speedup wins; ties break on lower energy, then on the
    // enumeration order of InferenceMode.
    if (cell.latency_speedup > best->latency_speedup ||
        (cell.latency_speedup == best->latency_speedup &&
         (cell.energy_ratio < best->energy_ratio ||
          (cell.energy_ratio == best->energy_ratio &&
           static_cast<int>(cell.mode) < static_cast<int>(best->mode))))) {
      best = &cell;
    }
  }

  RoutingDecision decision;
  if (best == nullptr) {
    // Even the FP16 identity cell was excluded (infeasible or constrained
    // away); fall back explicitly.
    decision.mode = InferenceMode::FP16;
    decision.reason = RoutingReason::OracleFallbackFP16;
  } else {
    decision.mode = best->mode;
    if (best->mode == InferenceMode::FP16 && non_fp16_candidate_offered &&
        !non_fp16_feasible) {
      decision.reason = RoutingReason::OracleFallbackFP16;
    } else {
      decision.reason = RoutingReason::OracleFeasibleFastest;
    }
  }
  decision.overhead_ms = elapsed_ms(start);
  return decision;
}

RoutingDecision route_static(InferenceMode mode) {
  // A fixed mode involves no decision work; its routing overhead is zero by
  // definition, which keeps the FP16 baseline identity exact.
  RoutingDecision decision;
  decision.mode = mode;
  decision.reason = RoutingReason::Static;
  decision.overhead_ms = 0.0;
  return decision;
}

std::vector<InferenceMode> default_oracle_candidates() {
  const auto classes = oracle_classes();
  return std::vector<InferenceMode>(classes.begin(), classes.end());
}

RulePolicy::RulePolicy(ClassifierConfig config) : config_(config) {
  validate(config_);
}

RoutingDecision RulePolicy::route(const RequestDescriptor& request) const {
  // Time the full decision pipeline: extraction, classification, rules.
  const auto start = Clock::now();
  const FeatureVector features = extract_features(request);
  const WorkloadClass cls = classify(features, config_);
  RoutingDecision decision = route_rule(request, cls, config_);
  decision.overhead_ms = elapsed_ms(start);
  return decision;
}

StaticPolicy::StaticPolicy(InferenceMode mode) : mode_(mode) {}

std::string StaticPolicy::name() const {
  if (mode_ == InferenceMode::FP16) return "fp16";
  return "static:" + std::string(to_string(mode_));
}

RoutingDecision StaticPolicy::route(const RequestDescriptor& request) const {
  (void)request;
  return route_static(mode_);
}

OraclePolicy::OraclePolicy(const ProfileTable& table, ConstraintSet constraints,
                           std::vector<InferenceMode> candidates,
                           ClassifierConfig config)
    : table_(table),
      constraints_(constraints),
      candidates_(std::move(candidates)),
      config_(config) {
  validate(constraints_);
  validate(config_);
}

RoutingDecision OraclePolicy::route(const RequestDescriptor& request) const {
  // The oracle is a reference upper bound computed from measurements, not a
  // deployable decider; it is modeled with zero routing overhead.
  const WorkloadFamily family = resolve_family(request, config_);
  RoutingDecision decision =
      route_oracle(family, table_, constraints_, candidates_);
  decision.overhead_ms = 0.0;
  return decision;
}

}  // namespace modeswitch

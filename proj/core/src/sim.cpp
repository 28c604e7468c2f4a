#include "modeswitch/sim.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace modeswitch {

PowerTrace read_power_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open power trace: " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) || line != "timestamp_ms,power_w") {
    throw DataError("power trace " + path.string() +
                    ": expected header 'timestamp_ms,power_w'");
  }
  PowerTrace trace;
  size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string ts;
    std::string pw;
    if (!std::getline(fields, ts, ',') || !std::getline(fields, pw)) {
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": malformed power sample");
    }
    try {
      trace.samples.push_back({std::stod(ts), std::stod(pw)});
    } catch (const std::exception&) {
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": non-numeric power sample");
    }
  }
  return trace;
}

void write_power_trace(const PowerTrace& trace,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write power trace: " + path.string());
  }
  out << "timestamp_ms,power_w\n";
  char buffer[96];
  for (const auto& sample : trace.samples) {
    std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g", sample.timestamp_ms,
                  sample.power_w);
    out << buffer << '\n';
  }
}

double energy_from_power_trace(const PowerTrace& trace, int tokens) {
  if (trace.samples.size() < 2) {
    throw DataError("power trace needs at least 2 samples to integrate");
  }
  if (tokens < 1) {
    throw DataError("energy_from_power_trace: tokens must be positive");
  }
  double joules = 0.0;
  for (size_t i = 0; i + 1 < trace.samples.size(); ++i) {
    const auto& a = trace.samples[i];
    const auto& b = trace.samples[i + 1];
    if (!(b.timestamp_ms > a.timestamp_ms)) {
      throw DataError("power trace timestamps must be strictly increasing");
    }
    if (a.power_w < 0.0 || b.power_w < 0.0) {
      throw DataError("power trace samples must be nonnegative");
    }
    joules += 0.5 * (a.power_w + b.power_w) * (b.timestamp_ms - a.timestamp_ms) /
              1000.0;
  }
  return joules / tokens;
}

SimRequestResult simulate_request(const RequestDescriptor& request,
                                  const RoutingDecision& decision,
                                  const ProfileTable& table,
                                  const ConstraintSet& constraints,
                                  const SimOptions& options) {
  validate(request);
  const WorkloadFamily family = resolve_family(request, options.classifier);

  SimRequestResult result;
  result.request_id = request.request_id;
  result.decision = decision;
  result.family = family;

  // Decide which cell actually drives the simulation.
  const ModeProfileCell* cell = nullptr;
  std::string problem;
  if (!table.contains(decision.mode, family)) {
    problem = "no profile cell for (" + std::string(to_string(decision.mode)) +
              ", " + std::string(to_string(family)) + ")";
  } else {
    const ModeProfileCell& candidate = table.lookup(decision.mode, family);
    if (!candidate.feasible) {
      problem = "cell (" + std::string(to_string(decision.mode)) + ", " +
                std::string(to_string(family)) + ") is marked infeasible";
    } else if (requires_batching(decision.mode) && request.batch_pressure <= 1) {
      problem = std::string(to_string(decision.mode)) +
                " applies only to batched requests (batch_pressure > 1)";
    } else {
      cell = &candidate;
    }
  }

  if (cell == nullptr) {
    if (!options.fallback_enabled) {
      throw DataError("request '" + request.request_id + "': " + problem +
                      " and FP16 fallback is disabled");
    }
    if (!table.contains(InferenceMode::FP16, family)) {
      throw DataError("request '" + request.request_id +
                      "': FP16 fallback cell missing for family " +
                      std::string(to_string(family)));
    }
    cell = &table.lookup(InferenceMode::FP16, family);
    result.fallback_used = true;
  }

  result.simulated_mode = cell->mode;
  const double overhead =
      (options.zero_overhead ? 0.0 : decision.overhead_ms) +
      options.extra_overhead_ms;
  result.overhead_ms = overhead;

  const BaselineCostModel& costs = table.baseline_costs();
  result.fp16_latency_ms = fp16_latency(costs, request);
  result.mode_latency_ms =
      result.fp16_latency_ms / cell->latency_speedup + overhead;
  result.speedup = speedup(result.fp16_latency_ms, result.mode_latency_ms);
  result.energy_ratio = cell->energy_ratio;
  result.memory_ratio = cell->memory_ratio;
  result.quality_delta_pp = cell->quality_delta_pp;
  result.energy_j = costs.fp16_energy_j_per_token * cell->energy_ratio *
                    request.expected_output_tokens;
  result.constraint_violated = !satisfies(*cell, constraints);
  result.used_synthesized_cell = cell->provenance == Provenance::Synthesized;
  return result;
}

namespace {

PolicyReport summarize(const std::string& policy_name,
                       const std::vector<SimRequestResult>& results,
                       int oracle_matches) {
  PolicyReport report;
  report.policy = policy_name;
  report.request_count = static_cast<int>(results.size());

  double total_fp16 = 0.0;
  double total_mode = 0.0;
  std::map<WorkloadFamily, FamilySummary> families;
  int violations = 0;
  int synthesized = 0;
  for (const auto& result : results) {
    report.mean_speedup += result.speedup;
    report.mean_energy_ratio += result.energy_ratio;
    report.mean_memory_ratio += result.memory_ratio;
    report.mean_quality_delta_pp += result.quality_delta_pp;
    report.mean_overhead_ms += result.overhead_ms;
    total_fp16 += result.fp16_latency_ms;
    total_mode += result.mode_latency_ms;
    if (result.constraint_violated) ++violations;
    if (result.used_synthesized_cell) ++synthesized;
    if (result.fallback_used) ++report.fallback_count;

    FamilySummary& family = families[result.family];
    family.family = result.family;
    family.count += 1;
    family.mean_speedup += result.speedup;
    family.mean_energy_ratio += result.energy_ratio;
    family.mean_memory_ratio += result.memory_ratio;
    family.mean_quality_delta_pp += result.quality_delta_pp;
  }

  const double n = static_cast<double>(results.size());
  report.mean_speedup /= n;
  report.mean_energy_ratio /= n;
  report.mean_memory_ratio /= n;
  report.mean_quality_delta_pp /= n;
  report.mean_overhead_ms /= n;
  report.aggregate_latency_speedup = total_fp16 / total_mode;
  report.constraint_violation_rate = violations / n;
  report.synthesized_cell_usage = synthesized / n;
  report.oracle_match_rate = oracle_matches / n;

  for (auto& [family, summary] : families) {
    (void)family;
    summary.mean_speedup /= summary.count;
    summary.mean_energy_ratio /= summary.count;
    summary.mean_memory_ratio /= summary.count;
    summary.mean_quality_delta_pp /= summary.count;
    report.per_family.push_back(summary);
    report.collapsed_mean_speedup += summary.mean_speedup;
    report.collapsed_mean_energy_ratio += summary.mean_energy_ratio;
  }
  report.collapsed_mean_speedup /= static_cast<double>(report.per_family.size());
  report.collapsed_mean_energy_ratio /=
      static_cast<double>(report.per_family.size());
  return report;
}

}  // namespace

PolicyRunResult run_policy(const std::vector<RequestDescriptor>& trace,
                           const RoutingPolicy& policy,
                           const ProfileTable& table,
                           const ConstraintSet& constraints,
                           const SimOptions& options) {
  if (trace.empty()) {
    throw DataError("run_policy: empty trace");
  }
  const auto oracle_candidates = default_oracle_candidates();

  PolicyRunResult run;
  run.results.reserve(trace.size());
  int oracle_matches = 0;
  for (const auto& request : trace) {
    const RoutingDecision decision = policy.route(request);
    SimRequestResult result =
        simulate_request(request, decision, table, constraints, options);
    const RoutingDecision oracle_choice = route_oracle(
        result.family, table, constraints, oracle_candidates);
    if (oracle_choice.mode == decision.mode) ++oracle_matches;
    run.results.push_back(std::move(result));
  }
  run.report = summarize(policy.name(), run.results, oracle_matches);
  return run;
}

PolicyComparison compare_policies(
    const std::vector<RequestDescriptor>& trace,
    const std::vector<const RoutingPolicy*>& policies,
    const ProfileTable& table, const ConstraintSet& constraints,
    const SimOptions& options) {
  if (policies.empty()) {
    throw ConfigError("compare_policies: need at least one policy");
  }
  PolicyComparison comparison;

  // The capture denominator is always the five-class oracle on this trace,
  // whether or not the caller listed it.
  OraclePolicy oracle(table, constraints, default_oracle_candidates(),
                      options.classifier);
  const PolicyRunResult oracle_run =
      run_policy(trace, oracle, table, constraints, options);
  comparison.oracle_mean_speedup = oracle_run.report.mean_speedup;

  for (const RoutingPolicy* policy : policies) {
    comparison.runs.push_back(
        run_policy(trace, *policy, table, constraints, options));
    comparison.oracle_capture.push_back(
        comparison.runs.back().report.mean_speedup /
        comparison.oracle_mean_speedup);
  }
  return comparison;
}

QualityGateResult evaluate_quality_gate(
    const std::vector<SimRequestResult>& results, double threshold_pp) {
  QualityGateResult gate;
  std::map<WorkloadFamily, FamilySummary> families;
  for (const auto& result : results) {
    if (!is_benchmark_family(result.family)) continue;
    FamilySummary& family = families[result.family];
    family.family = result.family;
    family.count += 1;
    family.mean_quality_delta_pp += result.quality_delta_pp;
    family.mean_speedup += result.speedup;
    family.mean_energy_ratio += result.energy_ratio;
    family.mean_memory_ratio += result.memory_ratio;
  }
  if (families.empty()) {
    return gate;  // no benchmark traffic, nothing to gate
  }
  double collapsed = 0.0;
  for (auto& [family, summary] : families) {
    (void)family;
    summary.mean_quality_delta_pp /= summary.count;
    summary.mean_speedup /= summary.count;
    summary.mean_energy_ratio /= summary.count;
    summary.mean_memory_ratio /= summary.count;
    collapsed += summary.mean_quality_delta_pp;
    gate.benchmark_families.push_back(summary);
  }
  collapsed /= static_cast<double>(families.size());
  gate.collapsed_benchmark_delta_pp = collapsed;
  gate.passed = std::abs(collapsed) <= threshold_pp;
  return gate;
}

}  // namespace modeswitch

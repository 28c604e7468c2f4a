#include "modeswitch/profile.hpp"

#include <cmath>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

namespace modeswitch {

namespace {

std::string cell_coordinates(InferenceMode mode, WorkloadFamily family) {
  return "(" + std::string(to_string(mode)) + ", " +
         std::string(to_string(family)) + ")";
}

double require_number(const nlohmann::json& object, const std::string& key,
                      const std::string& where) {
  if (!object.contains(key) || !object[key].is_number()) {
    throw DataError("profile: " + where + ": field '" + key +
                    "' missing or not a number");
  }
  return object[key].get<double>();
}

}  // namespace

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::Measured: return "measured";
    case Provenance::Synthesized: return "synthesized";
  }
  throw DataError("unknown Provenance value");
}

Provenance provenance_from_string(std::string_view name) {
  if (name == "measured") return Provenance::Measured;
  if (name == "synthesized") return Provenance::Synthesized;
  throw DataError("unknown provenance: '" + std::string(name) + "'");
}

void ProfileTable::insert(const ModeProfileCell& cell) {
  auto key = std::make_pair(static_cast<int>(cell.mode),
                            static_cast<int>(cell.family));
  if (index_.count(key)) {
    throw DataError("profile: duplicate cell " +
                    cell_coordinates(cell.mode, cell.family));
  }
  index_[key] = cells_.size();
  cells_.push_back(cell);
}

bool ProfileTable::contains(InferenceMode mode, WorkloadFamily family) const {
  return index_.count({static_cast<int>(mode), static_cast<int>(family)}) > 0;
}

const ModeProfileCell& ProfileTable::lookup(InferenceMode mode,
                                            WorkloadFamily family) const {
  auto it = index_.find({static_cast<int>(mode), static_cast<int>(family)});
  if (it == index_.end()) {
    throw DataError("profile: no cell for " + cell_coordinates(mode, family));
  }
  return cells_[it->second];
}

std::vector<WorkloadFamily> ProfileTable::families() const {
  std::vector<WorkloadFamily> result;
  for (WorkloadFamily family : all_families()) {
    for (const auto& cell : cells_) {
      if (cell.family == family) {
        result.push_back(family);
        break;
      }
    }
  }
  return result;
}

void ProfileTable::validate() const {
  const auto& costs = baseline_costs_;
  if (!(costs.prefill_ms_per_token > 0.0) ||
      !(costs.decode_ms_per_token > 0.0)) {
    throw DataError("profile: baseline token rates must be strictly positive");
  }
  if (costs.fixed_overhead_ms < 0.0) {
    throw DataError("profile: fixed_overhead_ms must be nonnegative");
  }
  if (!(costs.fp16_energy_j_per_token > 0.0) ||
      !(costs.fp16_peak_memory_mb > 0.0)) {
    throw DataError("profile: baseline energy and memory must be positive");
  }

  for (const auto& cell : cells_) {
    const std::string where = cell_coordinates(cell.mode, cell.family);
    if (!(cell.latency_speedup > 0.0) || !(cell.energy_ratio > 0.0) ||
        !(cell.memory_ratio > 0.0)) {
      throw DataError("profile: nonpositive ratio in cell " + where);
    }
    if (cell.mode == InferenceMode::FP16) {
      if (cell.latency_speedup != 1.0 || cell.energy_ratio != 1.0 ||
          cell.memory_ratio != 1.0 || cell.quality_delta_pp != 0.0 ||
          !cell.feasible) {
        throw DataError("profile: FP16 cell " + where +
                        " must be the exact identity cell");
      }
    }
    if (cell.anchor) {
      const auto& anchor = *cell.anchor;
      if (!(anchor.latency_s > 0.0) || !(anchor.throughput_tps > 0.0) ||
          !(anchor.tokens > 0.0)) {
        throw DataError("profile: anchor fields must be positive in cell " +
                        where);
      }
      double recovered = anchor.latency_s * anchor.throughput_tps;
      if (std::abs(recovered - anchor.tokens) / anchor.tokens > 0.02) {
        throw DataError(
            "profile: anchor latency x throughput does not recover token "
            "count within 2% in cell " + where);
      }
    }
  }

  for (WorkloadFamily family : families()) {
    if (!contains(InferenceMode::FP16, family)) {
      throw DataError("profile: missing FP16 identity cell for family " +
                      std::string(to_string(family)));
    }
  }
}

ProfileTable load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open profile file: " + path.string());
  }
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("profile " + path.string() + ": invalid JSON: " +
                    e.what());
  }
  if (!root.is_object()) {
    throw DataError("profile " + path.string() + ": root is not an object");
  }
  for (const auto& [key, value] : root.items()) {
    (void)value;
    if (key != "baseline_costs" && key != "cells") {
      throw DataError("profile: unknown top-level key '" + key + "'");
    }
  }
  if (!root.contains("baseline_costs") || !root.contains("cells")) {
    throw DataError("profile: 'baseline_costs' and 'cells' are required");
  }

  ProfileTable table;

  const auto& costs_json = root["baseline_costs"];
  static const std::unordered_set<std::string> kCostKeys = {
      "prefill_ms_per_token", "decode_ms_per_token", "fixed_overhead_ms",
      "fp16_energy_j_per_token", "fp16_peak_memory_mb"};
  for (const auto& [key, value] : costs_json.items()) {
    (void)value;
    if (!kCostKeys.count(key)) {
      throw DataError("profile: unknown baseline_costs key '" + key + "'");
    }
  }
  auto& costs = table.baseline_costs();
  costs.prefill_ms_per_token =
      require_number(costs_json, "prefill_ms_per_token", "baseline_costs");
  costs.decode_ms_per_token =
      require_number(costs_json, "decode_ms_per_token", "baseline_costs");
  costs.fixed_overhead_ms =
      require_number(costs_json, "fixed_overhead_ms", "baseline_costs");
  costs.fp16_energy_j_per_token =
      require_number(costs_json, "fp16_energy_j_per_token", "baseline_costs");
  costs.fp16_peak_memory_mb =
      require_number(costs_json, "fp16_peak_memory_mb", "baseline_costs");

  if (!root["cells"].is_array()) {
    throw DataError("profile: 'cells' must be an array");
  }
  static const std::unordered_set<std::string> kCellKeys = {
      "mode",          "family",           "latency_speedup",
      "energy_ratio",  "memory_ratio",     "quality_delta_pp",
      "feasible",      "provenance",       "anchor_latency_s",
      "anchor_throughput_tps", "anchor_tokens"};
  for (const auto& cell_json : root["cells"]) {
    if (!cell_json.is_object()) {
      throw DataError("profile: cell entries must be objects");
    }
    for (const auto& [key, value] : cell_json.items()) {
      (void)value;
      if (!kCellKeys.count(key)) {
        throw DataError("profile: unknown cell key '" + key + "'");
      }
    }
    ModeProfileCell cell;
    if (!cell_json.contains("mode") || !cell_json["mode"].is_string() ||
        !cell_json.contains("family") || !cell_json["family"].is_string()) {
      throw DataError("profile: cell 'mode' and 'family' must be strings");
    }
    cell.mode = mode_from_string(cell_json["mode"].get<std::string>());
    cell.family = family_from_string(cell_json["family"].get<std::string>());
    const std::string where = cell_coordinates(cell.mode, cell.family);
    cell.latency_speedup = require_number(cell_json, "latency_speedup", where);
    cell.energy_ratio = require_number(cell_json, "energy_ratio", where);
    cell.memory_ratio = require_number(cell_json, "memory_ratio", where);
    cell.quality_delta_pp =
        require_number(cell_json, "quality_delta_pp", where);
    if (!cell_json.contains("feasible") || !cell_json["feasible"].is_boolean()) {
      throw DataError("profile: cell " + where + ": 'feasible' missing");
    }
    cell.feasible = cell_json["feasible"].get<bool>();
    if (!cell_json.contains("provenance") ||
        !cell_json["provenance"].is_string()) {
      throw DataError("profile: cell " + where + ": 'provenance' missing");
    }
    cell.provenance =
        provenance_from_string(cell_json["provenance"].get<std::string>());

    const bool has_anchor = cell_json.contains("anchor_latency_s") ||
                            cell_json.contains("anchor_throughput_tps") ||
                            cell_json.contains("anchor_tokens");
    if (has_anchor) {
      MeasurementAnchor anchor;
      anchor.latency_s = require_number(cell_json, "anchor_latency_s", where);
      anchor.throughput_tps =
          require_number(cell_json, "anchor_throughput_tps", where);
      anchor.tokens = require_number(cell_json, "anchor_tokens", where);
      cell.anchor = anchor;
    }
    table.insert(cell);
  }

  table.validate();
  return table;
}

void save_profile(const ProfileTable& table,
                  const std::filesystem::path& path) {
  nlohmann::ordered_json root;
  const auto& costs = table.baseline_costs();
  root["baseline_costs"] = {
      {"prefill_ms_per_token", costs.prefill_ms_per_token},
      {"decode_ms_per_token", costs.decode_ms_per_token},
      {"fixed_overhead_ms", costs.fixed_overhead_ms},
      {"fp16_energy_j_per_token", costs.fp16_energy_j_per_token},
      {"fp16_peak_memory_mb", costs.fp16_peak_memory_mb},
  };
  root["cells"] = nlohmann::ordered_json::array();
  for (const auto& cell : table.cells()) {
    nlohmann::ordered_json cell_json;
    cell_json["mode"] = std::string(to_string(cell.mode));
    cell_json["family"] = std::string(to_string(cell.family));
    cell_json["latency_speedup"] = cell.latency_speedup;
    cell_json["energy_ratio"] = cell.energy_ratio;
    cell_json["memory_ratio"] = cell.memory_ratio;
    cell_json["quality_delta_pp"] = cell.quality_delta_pp;
    cell_json["feasible"] = cell.feasible;
    cell_json["provenance"] = std::string(to_string(cell.provenance));
    if (cell.anchor) {
      cell_json["anchor_latency_s"] = cell.anchor->latency_s;
      cell_json["anchor_throughput_tps"] = cell.anchor->throughput_tps;
      cell_json["anchor_tokens"] = cell.anchor->tokens;
    }
    root["cells"].push_back(std::move(cell_json));
  }

  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write profile file: " + path.string());
  }
  out << root.dump(2) << '\n';
  if (!out) {
    throw DataError("failed while writing profile file: " + path.string());
  }
}

double fp16_latency(const BaselineCostModel& costs,
                    const RequestDescriptor& request) {
  validate(request);
  if (costs.prefill_ms_per_token < 0.0 || costs.decode_ms_per_token < 0.0 ||
      costs.fixed_overhead_ms < 0.0) {
    throw DataError("fp16_latency: cost rates must be nonnegative");
  }
  return costs.fixed_overhead_ms +
         costs.prefill_ms_per_token * request.prompt_tokens +
         costs.decode_ms_per_token * request.expected_output_tokens;
}

namespace {

void add_cell(ProfileTable& table, InferenceMode mode, WorkloadFamily family,
              double speedup_value, double energy_ratio, double delta_pp,
              Provenance provenance, bool feasible = true) {
  ModeProfileCell cell;
  cell.mode = mode;
  cell.family = family;
  cell.latency_speedup = speedup_value;
  cell.energy_ratio = energy_ratio;
  cell.memory_ratio = 1.0;  // optimized modes did not meaningfully move memory
  cell.quality_delta_pp = delta_pp;
  cell.feasible = feasible;
  cell.provenance = provenance;
  table.insert(cell);
}

}  // namespace

ProfileTable default_profile() {
  using enum InferenceMode;
  using enum WorkloadFamily;
  constexpr Provenance kMeasured = Provenance::Measured;
  constexpr Provenance kSynth = Provenance::Synthesized;

  ProfileTable table;
  // Calibrated so a nominal shared-prefix request (1024 prompt, 128 output)
  // lands at 20 + 409.6 + 1472 = 1901.6 ms, next to the measured 1903 ms
  // anchor, and so the LS shape is prefill-dominated (409.6 > 368).
  table.baseline_costs() = BaselineCostModel{0.4, 11.5, 20.0, 3.0, 16384.0};

  for (WorkloadFamily family : all_families()) {
    add_cell(table, FP16, family, 1.0, 1.0, 0.0, kMeasured);
  }

  // GPTQ 4-bit: the lowest-latency measured mode on the synthetic families
  // and GSM8K. Quality deltas come from benchmark accuracy and from ROUGE-L
  // proxies scaled to percentage points; the long-prompt generation families
  // degrade hard. The shared-prefix delta is synthesized by analogy with the
  // measured long-prompt drop. Choice-benchmark speedups are synthesized
  // below the measured INT8 winners for those families.
  add_cell(table, GPTQ4, SyntheticSS, 2.56, 0.46, -0.4, kMeasured);
  add_cell(table, GPTQ4, SyntheticSL, 2.76, 0.40, 0.0, kSynth);
  add_cell(table, GPTQ4, SyntheticLS, 2.10, 0.55, -8.6, kMeasured);
  add_cell(table, GPTQ4, SyntheticLL, 2.57, 0.44, 0.0, kSynth);
  add_cell(table, GPTQ4, SharedPrefixChat, 2.58, 0.46, -8.6, kSynth);
  add_cell(table, GPTQ4, MemoryPressureLongContext, 2.39, 0.48, -15.9,
           kMeasured);
  add_cell(table, GPTQ4, MMLUPro, 1.05, 0.68, -4.0, kSynth);
  add_cell(table, GPTQ4, GSM8K, 2.87, 0.39, -4.0, kMeasured);
  add_cell(table, GPTQ4, TruthfulQA, 0.96, 0.70, 0.0, kSynth);
  add_cell(table, GPTQ4, GPQA, 1.06, 0.66, 7.0, kSynth);
  add_cell(table, GPTQ4, MLU, 1.00, 0.64, -8.0, kSynth);

  // INT8: measured winner on the four choice benchmarks. Synthetic-family
  // speedups are synthesized at roughly three quarters of the GPTQ gain
  // (kept below GPTQ so the measured per-family winner stays the winner,
  // and below the shared-prefix hybrid on SharedPrefixChat). GSM8K is
  // synthesized at half the GPTQ speedup, the gap seen on benchmarks.
  add_cell(table, INT8, SyntheticSS, 1.90, 0.75, 0.0, kSynth);
  add_cell(table, INT8, SyntheticSL, 2.10, 0.72, 0.0, kSynth);
  add_cell(table, INT8, SyntheticLS, 1.70, 0.80, 0.0, kSynth);
  add_cell(table, INT8, SyntheticLL, 1.95, 0.74, 0.0, kSynth);
  add_cell(table, INT8, SharedPrefixChat, 1.90, 0.75, 0.0, kSynth);
  add_cell(table, INT8, MemoryPressureLongContext, 2.00, 0.73, 0.0, kSynth);
  add_cell(table, INT8, MMLUPro, 1.14, 0.82, 2.0, kMeasured);
  add_cell(table, INT8, GSM8K, 1.435, 0.695, 4.0, kSynth);
  add_cell(table, INT8, TruthfulQA, 1.01, 0.82, 3.0, kMeasured);
  add_cell(table, INT8, GPQA, 1.13, 0.79, -4.0, kMeasured);
  add_cell(table, INT8, MLU, 1.08, 0.75, 1.0, kMeasured);

  // Speculative decoding: relevant on long-output decode-heavy shapes,
  // neutral elsewhere. Benchmark quality deltas are measured; speedups are
  // synthesized (the efficiency screen reported other winners).
  add_cell(table, SpeculativeDecoding, SyntheticSS, 1.0, 1.0, 0.0, kSynth);
  add_cell(table, SpeculativeDecoding, SyntheticSL, 1.40, 0.75, 0.0, kSynth);
  add_cell(table, SpeculativeDecoding, SyntheticLS, 1.0, 1.0, 0.0, kSynth);
  add_cell(table, SpeculativeDecoding, SyntheticLL, 1.35, 0.78, 0.0, kSynth);
  add_cell(table, SpeculativeDecoding, SharedPrefixChat, 1.0, 1.0, 0.0,
           kSynth);
  add_cell(table, SpeculativeDecoding, MemoryPressureLongContext, 1.0, 1.0,
           0.0, kSynth);
  add_cell(table, SpeculativeDecoding, MMLUPro, 1.0, 1.0, 0.0, kSynth);
  add_cell(table, SpeculativeDecoding, GSM8K, 1.40, 0.75, -1.0, kSynth);
  add_cell(table, SpeculativeDecoding, TruthfulQA, 1.0, 1.0, 0.0, kSynth);
  add_cell(table, SpeculativeDecoding, GPQA, 1.0, 1.0, 0.0, kSynth);
  add_cell(table, SpeculativeDecoding, MLU, 1.0, 1.0, 0.0, kSynth);

  // Plain prefix caching. On SharedPrefixChat it is the measured absolute
  // anchor this profile treats as the FP16-equivalent baseline, so its
  // ratios are 1.0 by construction; the anchor records the absolute numbers.
  {
    ModeProfileCell cell;
    cell.mode = PrefixCaching;
    cell.family = SharedPrefixChat;
    cell.latency_speedup = 1.0;
    cell.energy_ratio = 1.0;
    cell.memory_ratio = 1.0;
    cell.quality_delta_pp = 0.0;
    cell.feasible = true;
    cell.provenance = kSynth;
    cell.anchor = MeasurementAnchor{1.903, 67.3, 128.0};
    table.insert(cell);
  }
  add_cell(table, PrefixCaching, SyntheticSS, 1.0, 1.0, 0.0, kSynth);
  add_cell(table, PrefixCaching, SyntheticSL, 1.0, 1.0, 0.0, kSynth);
  add_cell(table, PrefixCaching, SyntheticLS, 1.0, 1.0, 0.0, kSynth);
  add_cell(table, PrefixCaching, SyntheticLL, 1.0, 1.0, 0.0, kSynth);
  add_cell(table, PrefixCaching, MemoryPressureLongContext, 1.0, 1.0, 0.0,
           kSynth);
  add_cell(table, PrefixCaching, MMLUPro, 1.0, 1.0, 0.0, kSynth);
  add_cell(table, PrefixCaching, GSM8K, 1.0, 1.0, -1.0, kSynth);
  add_cell(table, PrefixCaching, TruthfulQA, 1.0, 1.0, 0.0, kSynth);
  add_cell(table, PrefixCaching, GPQA, 1.0, 1.0, 1.0, kSynth);
  add_cell(table, PrefixCaching, MLU, 1.0, 1.0, 0.0, kSynth);

  // GPTQ plus prefix caching, measured on the shared-prefix workload:
  // 1903 ms -> 942 ms and 3.26 -> 1.36 J/token against the plain
  // prefix-caching anchor above.
  {
    ModeProfileCell cell;
    cell.mode = GPTQPlusPrefixCaching;
    cell.family = SharedPrefixChat;
    cell.latency_speedup = 1903.0 / 942.0;
    cell.energy_ratio = 1.36 / 3.26;
    cell.memory_ratio = 1.0;
    cell.quality_delta_pp = 0.0;
    cell.feasible = true;
    cell.provenance = kMeasured;
    cell.anchor = MeasurementAnchor{0.942, 135.8, 128.0};
    table.insert(cell);
  }

  // INT8 plus continuous batching, measured with four simultaneous requests:
  // 1840 ms -> 1361 ms and 1.32 -> 0.83 J/token against plain continuous
  // batching. The measurement names no family, so the cell is attached to
  // every family; the simulator only applies it to batched requests.
  for (WorkloadFamily family : all_families()) {
    add_cell(table, INT8PlusContinuousBatching, family, 1840.0 / 1361.0,
             0.83 / 1.32, 0.0, kMeasured);
    add_cell(table, ContinuousBatching, family, 1.0, 1.0, 0.0, kSynth);
  }

  // Screening-only modes: kept for the synthetic grid with conservative
  // neutral values, deliberately omitted for benchmark families.
  for (WorkloadFamily family :
       {SyntheticSS, SyntheticSL, SyntheticLS, SyntheticLL}) {
    add_cell(table, AWQ4, family, 1.0, 1.0, 0.0, kSynth);
    add_cell(table, ChunkedPrefill, family, 1.0, 1.0, 0.0, kSynth);
    add_cell(table, CudaGraphs, family, 1.0, 1.0, 0.0, kSynth);
    add_cell(table, KVCacheCompression, family, 1.0, 1.0, 0.0, kSynth);
  }
  add_cell(table, KVCacheCompression, MemoryPressureLongContext, 1.0, 1.0,
           0.0, kSynth);

  table.validate();
  return table;
}

}  // namespace modeswitch

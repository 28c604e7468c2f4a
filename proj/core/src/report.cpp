#include "modeswitch/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace modeswitch {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open CSV file: " + path.string());
  }
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) {
      fields.push_back(field);
    }
    if (line.back() == ',') fields.push_back("");
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != table.header.size()) {
        throw DataError("CSV " + path.string() +
                        ": row width does not match header");
      }
      table.rows.push_back(std::move(fields));
    }
  }
  if (first) {
    throw DataError("CSV " + path.string() + ": missing header");
  }
  return table;
}

void write_decisions_csv(const std::vector<SimRequestResult>& results,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write decisions file: " + path.string());
  }
  out << "request_id,mode,reason,overhead_ms\n";
  for (const auto& result : results) {
    out << result.request_id << ',' << to_string(result.decision.mode) << ','
        << to_string(result.decision.reason) << ','
        << format_double(result.decision.overhead_ms) << '\n';
  }
}

std::vector<DecisionRecord> read_decisions_csv(
    const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  const std::vector<std::string> expected = {"request_id", "mode", "reason",
                                             "overhead_ms"};
  if (table.header != expected) {
    throw DataError("decisions CSV " + path.string() + ": unexpected header");
  }
  std::vector<DecisionRecord> records;
  for (const auto& row : table.rows) {
    DecisionRecord record;
    record.request_id = row[0];
    record.mode = mode_from_string(row[1]);
    record.reason = routing_reason_from_string(row[2]);
    record.overhead_ms = std::stod(row[3]);
    records.push_back(std::move(record));
  }
  return records;
}

void write_comparison_csv(const PolicyComparison& comparison,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write comparison CSV: " + path.string());
  }
  out << "policy,request_count,mean_speedup,mean_energy_ratio,"
         "mean_memory_ratio,mean_quality_delta_pp,collapsed_mean_speedup,"
         "collapsed_mean_energy_ratio,aggregate_latency_speedup,"
         "oracle_match_rate,constraint_violation_rate,mean_overhead_ms,"
         "synthesized_cell_usage,fallback_count,oracle_capture\n";
  for (size_t i = 0; i < comparison.runs.size(); ++i) {
    const PolicyReport& report = comparison.runs[i].report;
    out << report.policy << ',' << report.request_count << ','
        << format_double(report.mean_speedup) << ','
        << format_double(report.mean_energy_ratio) << ','
        << format_double(report.mean_memory_ratio) << ','
        << format_double(report.mean_quality_delta_pp) << ','
        << format_double(report.collapsed_mean_speedup) << ','
        << format_double(report.collapsed_mean_energy_ratio) << ','
        << format_double(report.aggregate_latency_speedup) << ','
        << format_double(report.oracle_match_rate) << ','
        << format_double(report.constraint_violation_rate) << ','
        << format_double(report.mean_overhead_ms) << ','
        << format_double(report.synthesized_cell_usage) << ','
        << report.fallback_count << ','
        << format_double(comparison.oracle_capture[i]) << '\n';
  }
}

void write_per_family_csv(const PolicyComparison& comparison,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write per-family CSV: " + path.string());
  }
  out << "policy,family,mean_speedup,mean_energy_ratio\n";
  for (const auto& run : comparison.runs) {
    for (const auto& family : run.report.per_family) {
      out << run.report.policy << ',' << to_string(family.family) << ','
          << format_double(family.mean_speedup) << ','
          << format_double(family.mean_energy_ratio) << '\n';
    }
  }
}

void write_confusion_csv(const ConfusionMatrix& matrix,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write confusion CSV: " + path.string());
  }
  out << "truth\\predicted";
  for (InferenceMode mode : oracle_classes()) {
    out << ',' << to_string(mode);
  }
  out << '\n';
  for (int i = 0; i < kOracleClassCount; ++i) {
    out << to_string(oracle_classes()[static_cast<size_t>(i)]);
    for (int j = 0; j < kOracleClassCount; ++j) {
      out << ',' << matrix.counts[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    out << '\n';
  }
}

void write_markdown_summary(const PolicyComparison& comparison,
                            const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write summary: " + path.string());
  }
  char buffer[64];
  auto short_num = [&buffer](double value) {
    std::snprintf(buffer, sizeof(buffer), "%.4g", value);
    return std::string(buffer);
  };

  out << "# Policy comparison\n\n";
  out << "| Policy | Speedup | Energy ratio | Quality delta (pp) | Oracle "
         "match | Oracle capture | Overhead (ms) | Violations | Synthesized "
         "cells |\n";
  out << "|---|---|---|---|---|---|---|---|---|\n";
  for (size_t i = 0; i < comparison.runs.size(); ++i) {
    const PolicyReport& report = comparison.runs[i].report;
    out << "| " << report.policy << " | " << short_num(report.mean_speedup)
        << "x | " << short_num(report.mean_energy_ratio) << "x | "
        << short_num(report.mean_quality_delta_pp) << " | "
        << short_num(report.oracle_match_rate * 100.0) << "% | "
        << short_num(comparison.oracle_capture[i]) << " | "
        << short_num(report.mean_overhead_ms) << " | "
        << short_num(report.constraint_violation_rate * 100.0) << "% | "
        << short_num(report.synthesized_cell_usage * 100.0) << "% |\n";
  }
  out << "\nCollapsed (one vote per family) speedups:\n\n";
  for (const auto& run : comparison.runs) {
    out << "- " << run.report.policy << ": "
        << short_num(run.report.collapsed_mean_speedup) << "x latency, "
        << short_num(run.report.collapsed_mean_energy_ratio)
        << "x energy\n";
  }
  out << "\nOracle mean speedup on this trace: "
      << short_num(comparison.oracle_mean_speedup) << "x\n";
}

}  // namespace modeswitch

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "modeswitch/learned.hpp"
#include "modeswitch/sim.hpp"

namespace modeswitch {

/// Shortest lossless decimal form of a double (CSV values survive a
/// write/read round trip bit-exactly).
std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Minimal CSV reader for this project's own outputs (no quoting; fields
/// never contain commas).
CsvTable read_csv(const std::filesystem::path& path);

/// One decision per line: request_id, mode, reason, overhead_ms.
void write_decisions_csv(const std::vector<SimRequestResult>& results,
                         const std::filesystem::path& path);

struct DecisionRecord {
  std::string request_id;
  InferenceMode mode = InferenceMode::FP16;
  RoutingReason reason = RoutingReason::Static;
  double overhead_ms = 0.0;
};

std::vector<DecisionRecord> read_decisions_csv(
    const std::filesystem::path& path);

/// One row per compared policy with every report scalar plus its oracle
/// capture.
void write_comparison_csv(const PolicyComparison& comparison,
                          const std::filesystem::path& path);

/// Long-form per-family table: policy, family, mean speedup, mean energy
/// ratio. Suitable for plotting mode/family charts externally.
void write_per_family_csv(const PolicyComparison& comparison,
                          const std::filesystem::path& path);

/// 5x5 counts with labeled header row and column.
void write_confusion_csv(const ConfusionMatrix& matrix,
                         const std::filesystem::path& path);

/// Human-readable comparison summary.
void write_markdown_summary(const PolicyComparison& comparison,
                            const std::filesystem::path& path);

}  // namespace modeswitch

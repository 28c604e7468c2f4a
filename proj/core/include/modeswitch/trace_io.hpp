#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "modeswitch/domain.hpp"

namespace modeswitch {

// Trace files are line-delimited JSON, one request per line, with exactly
// these fields: request_id, prompt_tokens, expected_output_tokens,
// shared_prefix, memory_pressure, batch_pressure, workload_tag (string or
// null). Unknown keys are rejected.

/// Parses one trace line. Throws DataError on schema or invariant violations.
RequestDescriptor parse_trace_line(const std::string& line);

/// Serializes a descriptor to its canonical single-line JSON form.
std::string format_trace_line(const RequestDescriptor& request);

/// Reads a whole trace; enforces per-request invariants and request_id
/// uniqueness across the trace.
std::vector<RequestDescriptor> read_trace(const std::filesystem::path& path);

/// Writes a trace in canonical form (byte-stable for identical input).
void write_trace(const std::vector<RequestDescriptor>& trace,
                 const std::filesystem::path& path);

}  // namespace modeswitch

#include "modeswitch/trace_io.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

namespace modeswitch {

namespace {

const std::unordered_set<std::string> kTraceKeys = {
    "request_id",      "prompt_tokens", "expected_output_tokens",
    "shared_prefix",   "memory_pressure", "batch_pressure",
    "workload_tag",
};

int require_int(const nlohmann::json& object, const std::string& key) {
  if (!object.contains(key) || !object[key].is_number_integer()) {
    throw DataError("trace field '" + key + "' missing or not an integer");
  }
  return object[key].get<int>();
}

bool require_bool(const nlohmann::json& object, const std::string& key) {
  if (!object.contains(key) || !object[key].is_boolean()) {
    throw DataError("trace field '" + key + "' missing or not a boolean");
  }
  return object[key].get<bool>();
}

}  // namespace

RequestDescriptor parse_trace_line(const std::string& line) {
  nlohmann::json object;
  try {
    object = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid trace JSON: ") + e.what());
  }
  if (!object.is_object()) {
    throw DataError("trace line is not a JSON object");
  }
  for (const auto& [key, value] : object.items()) {
    (void)value;
    if (!kTraceKeys.count(key)) {
      throw DataError("unknown trace field '" + key + "'");
    }
  }

  RequestDescriptor request;
  if (!object.contains("request_id") || !object["request_id"].is_string()) {
    throw DataError("trace field 'request_id' missing or not a string");
  }
  request.request_id = object["request_id"].get<std::string>();
  request.prompt_tokens = require_int(object, "prompt_tokens");
  request.expected_output_tokens = require_int(object, "expected_output_tokens");
  request.shared_prefix = require_bool(object, "shared_prefix");
  request.memory_pressure = require_bool(object, "memory_pressure");
  request.batch_pressure = require_int(object, "batch_pressure");

  if (!object.contains("workload_tag")) {
    throw DataError("trace field 'workload_tag' missing");
  }
  const auto& tag = object["workload_tag"];
  if (tag.is_null()) {
    request.workload_tag = std::nullopt;
  } else if (tag.is_string()) {
    request.workload_tag = family_from_string(tag.get<std::string>());
  } else {
    throw DataError("trace field 'workload_tag' must be a string or null");
  }

  validate(request);
  return request;
}

std::string format_trace_line(const RequestDescriptor& request) {
  nlohmann::ordered_json object;
  object["request_id"] = request.request_id;
  object["prompt_tokens"] = request.prompt_tokens;
  object["expected_output_tokens"] = request.expected_output_tokens;
  object["shared_prefix"] = request.shared_prefix;
  object["memory_pressure"] = request.memory_pressure;
  object["batch_pressure"] = request.batch_pressure;
  if (request.workload_tag) {
    object["workload_tag"] = std::string(to_string(*request.workload_tag));
  } else {
    object["workload_tag"] = nullptr;
  }
  return object.dump();
}

std::vector<RequestDescriptor> read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open trace file: " + path.string());
  }
  std::vector<RequestDescriptor> trace;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    RequestDescriptor request;
    try {
      request = parse_trace_line(line);
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": " + e.what());
    }
    if (!seen_ids.insert(request.request_id).second) {
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": duplicate request_id '" + request.request_id + "'");
    }
    trace.push_back(std::move(request));
  }
  return trace;
}

void write_trace(const std::vector<RequestDescriptor>& trace,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write trace file: " + path.string());
  }
  for (const auto& request : trace) {
    out << format_trace_line(request) << '\n';
  }
  if (!out) {
    throw DataError("failed while writing trace file: " + path.string());
  }
}

}  // namespace modeswitch

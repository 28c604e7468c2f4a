#pragma once

#include <atomic>
#include <filesystem>
#include <optional>
#include <random>
#include <string>

#include "modeswitch/domain.hpp"

namespace modeswitch::testing {

/// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    const int id = counter.fetch_add(1);
    path_ = std::filesystem::temp_directory_path() /
            ("modeswitch_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(id));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const std::string& name) const {
    return path_ / name;
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline RequestDescriptor make_request(
    int prompt, int output, bool shared = false, bool memory = false,
    int batch = 1, std::optional<WorkloadFamily> tag = std::nullopt,
    std::string id = "") {
  static std::atomic<int> counter{0};
  RequestDescriptor request;
  request.request_id =
      id.empty() ? "req-" + std::to_string(counter.fetch_add(1)) : id;
  request.prompt_tokens = prompt;
  request.expected_output_tokens = output;
  request.shared_prefix = shared;
  request.memory_pressure = memory;
  request.batch_pressure = batch;
  request.workload_tag = tag;
  return request;
}

/// Portable uniform double in [lo, hi) from raw engine draws.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace modeswitch::testing

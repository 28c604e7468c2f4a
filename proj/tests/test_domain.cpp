#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modeswitch/domain.hpp"
#include "modeswitch/trace_io.hpp"
#include "test_util.hpp"

using namespace modeswitch;
using modeswitch::testing::make_request;
using modeswitch::testing::uniform;

TEST_CASE("speedup matches the measured hybrid latency pairs") {
  // 1903 ms -> 942 ms (shared-prefix) and 1840 ms -> 1361 ms (batched).
  CHECK(speedup(1903, 942) == doctest::Approx(2.020).epsilon(0.001));
  CHECK(speedup(1903, 942) == 1903.0 / 942.0);
  CHECK(speedup(1840, 1361) == doctest::Approx(1.352).epsilon(0.001));
  CHECK(speedup(100, 100) == 1.0);
}

TEST_CASE("speedup rejects non-positive latencies") {
  CHECK_THROWS_AS(speedup(0, 10), DataError);
  CHECK_THROWS_AS(speedup(10, 0), DataError);
  CHECK_THROWS_AS(speedup(-1, 10), DataError);
}

TEST_CASE("ratio_vs_baseline matches the measured energy pairs") {
  CHECK(ratio_vs_baseline(1.36, 3.26) == doctest::Approx(0.417).epsilon(0.001));
  CHECK(ratio_vs_baseline(0.83, 1.32) == doctest::Approx(0.629).epsilon(0.001));
  CHECK(ratio_vs_baseline(0, 5) == 0.0);
  CHECK_THROWS_AS(ratio_vs_baseline(1.0, 0.0), DataError);
  CHECK_THROWS_AS(ratio_vs_baseline(-0.5, 1.0), DataError);
}

TEST_CASE("speedup reciprocal property") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    const double a = uniform(rng, 1e-3, 1e5);
    const double b = uniform(rng, 1e-3, 1e5);
    const double product = speedup(a, b) * speedup(b, a);
    CHECK(product == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("enumerations round-trip through their string forms") {
  for (WorkloadFamily family : all_families()) {
    CHECK(family_from_string(to_string(family)) == family);
  }
  for (InferenceMode mode : all_modes()) {
    CHECK(mode_from_string(to_string(mode)) == mode);
  }
  for (WorkloadClass cls :
       {WorkloadClass::Batched, WorkloadClass::SharedPrefix,
        WorkloadClass::MemoryPressure, WorkloadClass::PrefillHeavy,
        WorkloadClass::DecodeHeavy, WorkloadClass::Balanced}) {
    CHECK(workload_class_from_string(to_string(cls)) == cls);
  }
  CHECK_THROWS_AS(family_from_string("NotAFamily"), DataError);
  CHECK_THROWS_AS(mode_from_string("fp32"), DataError);
}

TEST_CASE("enumeration sizes and special sets") {
  CHECK(all_families().size() == 11);
  CHECK(all_modes().size() == 12);
  CHECK(controller_candidates().size() == 6);
  const auto candidates = controller_candidates();
  CHECK(std::count(candidates.begin(), candidates.end(),
                   InferenceMode::FP16) == 1);
  CHECK(std::count(candidates.begin(), candidates.end(),
                   InferenceMode::INT8PlusContinuousBatching) == 1);
  CHECK(oracle_classes().size() == 5);
  // Fixed tie-break order of the learned-label space.
  CHECK(oracle_classes()[0] == InferenceMode::FP16);
  CHECK(oracle_classes()[1] == InferenceMode::INT8);
  CHECK(oracle_classes()[2] == InferenceMode::GPTQ4);
  CHECK(oracle_classes()[3] == InferenceMode::SpeculativeDecoding);
  CHECK(oracle_classes()[4] == InferenceMode::GPTQPlusPrefixCaching);
}

TEST_CASE("benchmark and scoring helpers") {
  CHECK(is_benchmark_family(WorkloadFamily::MMLUPro));
  CHECK(is_benchmark_family(WorkloadFamily::GSM8K));
  CHECK_FALSE(is_benchmark_family(WorkloadFamily::SyntheticSS));
  CHECK(is_choice_scored(WorkloadFamily::MMLUPro));
  CHECK(is_choice_scored(WorkloadFamily::TruthfulQA));
  CHECK(is_choice_scored(WorkloadFamily::GPQA));
  CHECK(is_choice_scored(WorkloadFamily::MLU));
  CHECK_FALSE(is_choice_scored(WorkloadFamily::GSM8K));
  CHECK_FALSE(is_choice_scored(WorkloadFamily::SharedPrefixChat));
}

TEST_CASE("descriptor invariants") {
  CHECK_NOTHROW(validate(make_request(1, 1)));
  CHECK_THROWS_AS(validate(make_request(0, 32)), DataError);
  CHECK_THROWS_AS(validate(make_request(128, 0)), DataError);
  CHECK_THROWS_AS(validate(make_request(128, 32, false, false, 0)), DataError);
  RequestDescriptor unnamed = make_request(128, 32);
  unnamed.request_id.clear();
  CHECK_THROWS_AS(validate(unnamed), DataError);
}

TEST_CASE("trace lines round-trip") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    RequestDescriptor request = make_request(
        testing::uniform_int(rng, 1, 4096), testing::uniform_int(rng, 1, 512),
        rng() % 2 == 0, rng() % 2 == 0, testing::uniform_int(rng, 1, 8));
    if (rng() % 3 != 0) {
      request.workload_tag =
          all_families()[rng() % all_families().size()];
    }
    const RequestDescriptor parsed =
        parse_trace_line(format_trace_line(request));
    CHECK(parsed.request_id == request.request_id);
    CHECK(parsed.prompt_tokens == request.prompt_tokens);
    CHECK(parsed.expected_output_tokens == request.expected_output_tokens);
    CHECK(parsed.shared_prefix == request.shared_prefix);
    CHECK(parsed.memory_pressure == request.memory_pressure);
    CHECK(parsed.batch_pressure == request.batch_pressure);
    CHECK(parsed.workload_tag == request.workload_tag);
  }
}

TEST_CASE("trace parsing rejects malformed lines") {
  CHECK_THROWS_AS(parse_trace_line("not json"), DataError);
  CHECK_THROWS_AS(parse_trace_line("[1,2]"), DataError);
  // Unknown key.
  CHECK_THROWS_AS(
      parse_trace_line(
          R"({"request_id":"a","prompt_tokens":1,"expected_output_tokens":1,)"
          R"("shared_prefix":false,"memory_pressure":false,)"
          R"("batch_pressure":1,"workload_tag":null,"extra":1})"),
      DataError);
  // Missing workload_tag.
  CHECK_THROWS_AS(
      parse_trace_line(
          R"({"request_id":"a","prompt_tokens":1,"expected_output_tokens":1,)"
          R"("shared_prefix":false,"memory_pressure":false,)"
          R"("batch_pressure":1})"),
      DataError);
  // Invariant violation.
  CHECK_THROWS_AS(
      parse_trace_line(
          R"({"request_id":"a","prompt_tokens":0,"expected_output_tokens":1,)"
          R"("shared_prefix":false,"memory_pressure":false,)"
          R"("batch_pressure":1,"workload_tag":null})"),
      DataError);
}

TEST_CASE("read_trace enforces unique request ids") {
  testing::TempDir dir;
  const auto path = dir.file("dup.ndjson");
  std::vector<RequestDescriptor> trace = {
      make_request(10, 10, false, false, 1, std::nullopt, "same"),
      make_request(20, 20, false, false, 1, std::nullopt, "same")};
  write_trace(trace, path);
  CHECK_THROWS_AS(read_trace(path), DataError);
}

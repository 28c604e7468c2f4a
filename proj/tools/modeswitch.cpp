// Command-line front end: trace generation, routing, simulation, dataset
// construction, training, and policy comparison, all file-based.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modeswitch/learned.hpp"
#include "modeswitch/report.hpp"
#include "modeswitch/sim.hpp"
#include "modeswitch/trace_io.hpp"
#include "modeswitch/workload.hpp"

namespace ms = modeswitch;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;        // unexpected failure
constexpr int kExitConfig = 2;       // bad flags or settings
constexpr int kExitData = 3;         // bad or inconsistent input data
constexpr int kExitQualityGate = 4;  // --quality-gate tripped

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 success, 2 configuration error, 3 data error, "
    "4 quality-gate failure, 1 other failure.";

struct ConstraintFlags {
  double quality_floor = -1.5;
  double energy_max = 1.0;
  double memory_max = 1.10;

  void attach(CLI::App* cmd) {
    cmd->add_option("--quality-floor", quality_floor,
                    "Quality delta floor in percentage points")
        ->capture_default_str();
    cmd->add_option("--energy-max", energy_max, "Energy ratio cap")
        ->capture_default_str();
    cmd->add_option("--memory-max", memory_max, "Memory ratio cap")
        ->capture_default_str();
  }

  ms::ConstraintSet constraints() const {
    return {quality_floor, energy_max, memory_max};
  }
};

struct ClassifierFlags {
  ms::ClassifierConfig config;

  void attach(CLI::App* cmd) {
    cmd->add_option("--long-prompt", config.long_prompt_threshold,
                    "Long-prompt token threshold")
        ->capture_default_str();
    cmd->add_option("--long-output", config.long_output_threshold,
                    "Long-output token threshold")
        ->capture_default_str();
    cmd->add_option("--decode-ratio", config.decode_heavy_ratio,
                    "Output/prompt ratio above which a request is "
                    "decode-heavy")
        ->capture_default_str();
    cmd->add_option("--batch-threshold", config.batch_threshold,
                    "Batch pressure at which a request counts as batched")
        ->capture_default_str();
  }
};

struct ProfileFlag {
  std::string path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--profile", path,
                    "Profile JSON (default: $MODESWITCH_PROFILE, else the "
                    "built-in default profile)")
        ->envname("MODESWITCH_PROFILE");
  }

  ms::ProfileTable load() const {
    if (path.empty()) return ms::default_profile();
    return ms::load_profile(path);
  }
};

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    if (c == ':' || c == '/' || c == '\\') c = '_';
  }
  return out;
}

// Policy specs: fp16 | rule | oracle | static:<mode> | tree:<path> |
// forest:<path> | logistic:<path>.
std::unique_ptr<ms::RoutingPolicy> make_policy(
    const std::string& spec, const ms::ProfileTable& table,
    const ms::ConstraintSet& constraints,
    const ms::ClassifierConfig& classifier) {
  if (spec == "fp16") {
    return std::make_unique<ms::StaticPolicy>(ms::InferenceMode::FP16);
  }
  if (spec == "rule") {
    return std::make_unique<ms::RulePolicy>(classifier);
  }
  if (spec == "oracle") {
    return std::make_unique<ms::OraclePolicy>(
        table, constraints, ms::default_oracle_candidates(), classifier);
  }
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string kind = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (kind == "static") {
      return std::make_unique<ms::StaticPolicy>(ms::mode_from_string(arg));
    }
    if (kind == "tree" || kind == "forest" || kind == "logistic") {
      if (!fs::exists(arg)) {
        throw ms::ConfigError("model file not found: " + arg);
      }
      ms::AnyModel model = ms::load_model(arg);
      const std::string expected = kind == "tree"      ? "decision_tree"
                                   : kind == "forest"  ? "random_forest"
                                                       : "logistic";
      if (ms::model_kind(model) != expected) {
        throw ms::ConfigError("model file " + arg + " holds a " +
                              ms::model_kind(model) + ", not a " + expected);
      }
      return std::make_unique<ms::LearnedPolicy>(std::move(model), kind);
    }
  }
  throw ms::ConfigError(
      "unknown policy spec '" + spec +
      "' (expected fp16 | rule | oracle | static:<mode> | tree:<path> | "
      "forest:<path> | logistic:<path>)");
}

void print_family_histogram(const std::vector<ms::RequestDescriptor>& trace) {
  std::map<std::string, int> counts;
  for (const auto& request : trace) {
    const std::string key =
        request.workload_tag
            ? std::string(ms::to_string(*request.workload_tag))
            : std::string("(untagged)");
    counts[key]++;
  }
  std::cout << "family histogram (" << trace.size() << " requests):\n";
  for (const auto& [family, count] : counts) {
    std::cout << "  " << family << ": " << count << '\n';
  }
}

void print_mode_histogram(const std::vector<ms::SimRequestResult>& results) {
  std::map<std::string, std::map<std::string, int>> table;
  for (const auto& result : results) {
    table[std::string(ms::to_string(result.family))]
         [std::string(ms::to_string(result.decision.mode))]++;
  }
  std::cout << "selected mode by family:\n";
  for (const auto& [family, modes] : table) {
    std::cout << "  " << family << ":";
    for (const auto& [mode, count] : modes) {
      std::cout << ' ' << mode << "=" << count;
    }
    std::cout << '\n';
  }
}

double mean_decision_overhead(const std::vector<ms::SimRequestResult>& results) {
  double total = 0.0;
  for (const auto& result : results) total += result.decision.overhead_ms;
  return results.empty() ? 0.0 : total / static_cast<double>(results.size());
}

// gen-trace -------------------------------------------------------------

struct GenTraceCmd {
  int balanced = 0;
  std::vector<std::string> family_counts;
  double jitter = 0.10;
  std::uint64_t seed = 0;
  int batch_pressure = 4;
  double batched_fraction = 0.0;
  std::string out;

  void run() const {
    ms::TraceSpec spec;
    spec.jitter = jitter;
    spec.seed = seed;
    spec.batch_pressure = batch_pressure;
    spec.batched_fraction = batched_fraction;
    if (balanced > 0) {
      for (ms::WorkloadFamily family : ms::all_families()) {
        spec.counts[family] = balanced;
      }
    }
    for (const std::string& entry : family_counts) {
      const auto eq = entry.find('=');
      if (eq == std::string::npos) {
        throw ms::ConfigError("--family expects <Family>=<count>, got '" +
                              entry + "'");
      }
      const ms::WorkloadFamily family =
          ms::family_from_string(entry.substr(0, eq));
      int count = 0;
      try {
        count = std::stoi(entry.substr(eq + 1));
      } catch (const std::exception&) {
        throw ms::ConfigError("--family count is not an integer in '" +
                              entry + "'");
      }
      spec.counts[family] = count;
    }
    if (spec.counts.empty()) {
      throw ms::ConfigError("gen-trace needs --balanced or --family");
    }
    const auto trace = ms::generate_trace(spec);
    ms::write_trace(trace, out);
    print_family_histogram(trace);
    std::cout << "wrote " << trace.size() << " requests to " << out << '\n';
  }
};

// route ------------------------------------------------------------------

struct RouteCmd {
  std::string trace_path;
  std::string policy_spec = "rule";
  std::string out;
  ProfileFlag profile;
  ConstraintFlags constraints;
  ClassifierFlags classifier;

  void run() const {
    const auto trace = ms::read_trace(trace_path);
    if (trace.empty()) throw ms::DataError("trace is empty: " + trace_path);
    const ms::ProfileTable table = profile.load();
    const auto policy = make_policy(policy_spec, table, constraints.constraints(),
                                    classifier.config);

    // Route only; no latency simulation here.
    std::vector<ms::SimRequestResult> results;
    results.reserve(trace.size());
    for (const auto& request : trace) {
      ms::SimRequestResult result;
      result.request_id = request.request_id;
      result.decision = policy->route(request);
      result.family = ms::resolve_family(request, classifier.config);
      results.push_back(std::move(result));
    }
    ms::write_decisions_csv(results, out);
    print_mode_histogram(results);
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6f",
                  mean_decision_overhead(results));
    std::cout << "mean decision overhead: " << buffer << " ms\n";
    std::cout << "wrote decisions to " << out << '\n';
  }
};

// simulate / compare ------------------------------------------------------

struct CompareCmd {
  std::string trace_path;
  std::vector<std::string> policy_specs;
  std::string out_dir = ".";
  bool quality_gate = false;
  bool fallback = false;
  bool zero_overhead = false;
  double inject_overhead_ms = 0.0;
  ProfileFlag profile;
  ConstraintFlags constraints;
  ClassifierFlags classifier;

  int run() const {
    const auto trace = ms::read_trace(trace_path);
    if (trace.empty()) throw ms::DataError("trace is empty: " + trace_path);
    const ms::ProfileTable table = profile.load();
    const ms::ConstraintSet constraint_set = constraints.constraints();

    ms::SimOptions options;
    options.fallback_enabled = fallback;
    options.zero_overhead = zero_overhead;
    options.extra_overhead_ms = inject_overhead_ms;
    options.classifier = classifier.config;

    std::vector<std::unique_ptr<ms::RoutingPolicy>> policies;
    std::vector<const ms::RoutingPolicy*> policy_ptrs;
    for (const auto& spec : policy_specs) {
      policies.push_back(
          make_policy(spec, table, constraint_set, classifier.config));
      policy_ptrs.push_back(policies.back().get());
    }

    const ms::PolicyComparison comparison = ms::compare_policies(
        trace, policy_ptrs, table, constraint_set, options);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    ms::write_comparison_csv(comparison, dir / "comparison.csv");
    ms::write_per_family_csv(comparison, dir / "per_family.csv");
    ms::write_markdown_summary(comparison, dir / "summary.md");
    for (const auto& run : comparison.runs) {
      ms::write_decisions_csv(run.results,
                              dir / ("decisions_" +
                                     sanitize(run.report.policy) + ".csv"));
    }

    // Confusion matrices for learned policies, against the oracle's labels
    // on this very trace.
    for (size_t i = 0; i < policy_specs.size(); ++i) {
      const std::string& spec = policy_specs[i];
      if (spec.rfind("tree:", 0) != 0 && spec.rfind("forest:", 0) != 0 &&
          spec.rfind("logistic:", 0) != 0) {
        continue;
      }
      std::vector<ms::DatasetRow> rows =
          ms::build_dataset(trace, table, constraint_set);
      const ms::AnyModel model = ms::load_model(spec.substr(spec.find(':') + 1));
      const ms::ConfusionMatrix matrix = ms::confusion_matrix(
          [&model](const ms::FeatureVector& features) {
            return ms::predict(model, features);
          },
          rows);
      ms::write_confusion_csv(
          matrix, dir / ("confusion_" + sanitize(policy_specs[i]) + ".csv"));
    }

    char buffer[64];
    std::cout << "policy comparison on " << trace.size() << " requests:\n";
    for (size_t i = 0; i < comparison.runs.size(); ++i) {
      const auto& report = comparison.runs[i].report;
      std::snprintf(buffer, sizeof(buffer),
                    "%.3fx speedup, %.3fx energy, match %.1f%%, capture %.3f",
                    report.mean_speedup, report.mean_energy_ratio,
                    report.oracle_match_rate * 100.0,
                    comparison.oracle_capture[i]);
      std::cout << "  " << report.policy << ": " << buffer << '\n';
    }
    std::cout << "reports written to " << dir.string() << '\n';

    if (quality_gate) {
      bool all_passed = true;
      for (const auto& run : comparison.runs) {
        const ms::QualityGateResult gate =
            ms::evaluate_quality_gate(run.results);
        if (gate.benchmark_families.empty()) {
          std::cout << "quality gate [" << run.report.policy
                    << "]: no benchmark traffic, trivially passed\n";
          continue;
        }
        std::snprintf(buffer, sizeof(buffer), "%+.2f pp",
                      gate.collapsed_benchmark_delta_pp);
        std::cout << "quality gate [" << run.report.policy
                  << "]: collapsed benchmark delta " << buffer << " -> "
                  << (gate.passed ? "PASS" : "FAIL") << '\n';
        for (const auto& family : gate.benchmark_families) {
          std::snprintf(buffer, sizeof(buffer), "%+.2f pp",
                        family.mean_quality_delta_pp);
          std::cout << "    " << ms::to_string(family.family) << ": " << buffer
                    << '\n';
        }
        if (!gate.passed) all_passed = false;
      }
      if (!all_passed) {
        std::cerr << "quality gate failed: benchmark quality moved more than "
                     "1.5 pp from baseline\n";
        return kExitQualityGate;
      }
    }
    return kExitOk;
  }
};

// build-dataset -----------------------------------------------------------

struct BuildDatasetCmd {
  std::string trace_path;
  std::string labeler = "oracle";
  std::string out;
  ProfileFlag profile;
  ConstraintFlags constraints;
  ClassifierFlags classifier;

  void run() const {
    const auto trace = ms::read_trace(trace_path);
    if (trace.empty()) throw ms::DataError("trace is empty: " + trace_path);
    const ms::ProfileTable table = profile.load();
    std::vector<ms::DatasetRow> rows;
    if (labeler == "oracle") {
      rows = ms::build_dataset(trace, table, constraints.constraints());
    } else if (labeler == "rule") {
      ms::RulePolicy policy(classifier.config);
      rows = ms::build_dataset_with_policy(trace, policy);
    } else {
      throw ms::ConfigError("--labeler must be 'oracle' or 'rule'");
    }
    ms::save_dataset(rows, out);

    std::map<std::string, int> label_counts;
    for (const auto& row : rows) {
      label_counts[std::string(ms::to_string(row.label))]++;
    }
    std::cout << "labeled " << rows.size() << " rows (" << labeler << "):\n";
    for (const auto& [label, count] : label_counts) {
      std::cout << "  " << label << ": " << count << '\n';
    }
    std::cout << "wrote dataset to " << out << '\n';
  }
};

// train ---------------------------------------------------------------------

struct TrainCmd {
  std::string dataset_path;
  std::string model_kind = "tree";
  std::string out;
  int max_depth = 6;
  int min_samples_split = 2;
  int n_trees = 50;
  int features_per_split = 0;  // 0 = floor(sqrt(features))
  double learning_rate = 0.1;
  int iterations = 2000;
  double l2 = 1e-3;
  double test_fraction = 0.2;
  std::uint64_t seed = 0;

  void run() const {
    const auto rows = ms::load_dataset(dataset_path);
    if (rows.empty()) throw ms::DataError("dataset is empty: " + dataset_path);
    const ms::SplitDataset split =
        ms::stratified_split(rows, test_fraction, seed);

    ms::AnyModel model;
    if (model_kind == "tree") {
      model = ms::train_tree(split.train, max_depth, min_samples_split, seed);
    } else if (model_kind == "forest") {
      model = ms::train_forest(split.train, n_trees, features_per_split, seed);
    } else if (model_kind == "logistic") {
      model = ms::train_logistic(split.train, learning_rate, iterations, l2);
    } else {
      throw ms::ConfigError("--model must be tree, forest, or logistic");
    }
    ms::save_model(model, out);

    auto predictor = [&model](const ms::FeatureVector& features) {
      return ms::predict(model, features);
    };
    const ms::ConfusionMatrix train_matrix =
        ms::confusion_matrix(predictor, split.train);
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.2f%%",
                  train_matrix.accuracy * 100.0);
    std::cout << "train accuracy: " << buffer << " (" << split.train.size()
              << " rows)\n";
    if (!split.test.empty()) {
      const ms::ConfusionMatrix test_matrix =
          ms::confusion_matrix(predictor, split.test);
      std::snprintf(buffer, sizeof(buffer), "%.2f%%",
                    test_matrix.accuracy * 100.0);
      std::cout << "test accuracy: " << buffer << " (" << split.test.size()
                << " rows)\n";
      std::cout << "test confusion (rows = oracle class, cols = predicted):\n";
      for (int i = 0; i < ms::kOracleClassCount; ++i) {
        std::cout << "  " << ms::to_string(ms::oracle_classes()[i]) << ":";
        for (int j = 0; j < ms::kOracleClassCount; ++j) {
          std::cout << ' ' << test_matrix.counts[i][j];
        }
        std::cout << '\n';
      }
    }
    std::cout << "wrote " << model_kind << " model to " << out << '\n';
  }
};

// energy ---------------------------------------------------------------------

struct EnergyCmd {
  std::string power_trace_path;
  int tokens = 0;

  void run() const {
    const ms::PowerTrace trace = ms::read_power_trace(power_trace_path);
    const double joules_per_token = ms::energy_from_power_trace(trace, tokens);
    std::cout << ms::format_double(joules_per_token) << " J/token\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Request-boundary inference-mode routing and profile-driven serving "
      "simulation"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  GenTraceCmd gen_trace;
  auto* gen_cmd = app.add_subcommand("gen-trace",
                                     "Generate a deterministic workload trace");
  gen_cmd->add_option("--balanced", gen_trace.balanced,
                      "Requests per family across all 11 families");
  gen_cmd->add_option("--family", gen_trace.family_counts,
                      "Per-family count as <Family>=<count> (repeatable)");
  gen_cmd->add_option("--jitter", gen_trace.jitter,
                      "Uniform token jitter fraction")->capture_default_str();
  gen_cmd->add_option("--seed", gen_trace.seed, "Generator seed")
      ->capture_default_str();
  gen_cmd->add_option("--batch-pressure", gen_trace.batch_pressure,
                      "Batch pressure assigned to batched slices")
      ->capture_default_str();
  gen_cmd->add_option("--batched-fraction", gen_trace.batched_fraction,
                      "Fraction of each family generated as batched requests")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen_trace.out, "Output trace path")->required();

  RouteCmd route;
  auto* route_cmd =
      app.add_subcommand("route", "Route a trace and write a decisions file");
  route_cmd->add_option("--trace", route.trace_path, "Input trace")->required();
  route_cmd->add_option("--policy", route.policy_spec,
                        "fp16 | rule | oracle | static:<mode> | tree:<path> | "
                        "forest:<path> | logistic:<path>")
      ->capture_default_str();
  route_cmd->add_option("--out", route.out, "Decisions CSV path")->required();
  route.profile.attach(route_cmd);
  route.constraints.attach(route_cmd);
  route.classifier.attach(route_cmd);

  CompareCmd simulate;
  auto* simulate_cmd = app.add_subcommand(
      "simulate", "Simulate one policy over a trace and write reports");
  simulate_cmd->add_option("--trace", simulate.trace_path, "Input trace")
      ->required();
  std::string simulate_policy = "rule";
  simulate_cmd->add_option("--policy", simulate_policy, "Policy spec")
      ->capture_default_str();
  simulate_cmd->add_option("--out", simulate.out_dir, "Output directory")
      ->capture_default_str();
  simulate_cmd->add_flag("--quality-gate", simulate.quality_gate,
                         "Fail (exit 4) when benchmark quality moves more "
                         "than 1.5 pp");
  simulate_cmd->add_flag("--fallback", simulate.fallback,
                         "Simulate FP16 instead of erroring on unusable cells");
  simulate_cmd->add_flag("--zero-overhead", simulate.zero_overhead,
                         "Ignore measured routing overhead");
  simulate_cmd->add_option("--inject-overhead", simulate.inject_overhead_ms,
                           "Synthetic per-request routing overhead in ms")
      ->capture_default_str();
  simulate.profile.attach(simulate_cmd);
  simulate.constraints.attach(simulate_cmd);
  simulate.classifier.attach(simulate_cmd);

  CompareCmd compare;
  auto* compare_cmd = app.add_subcommand(
      "compare", "Simulate several policies over one trace and write reports");
  compare_cmd->add_option("--trace", compare.trace_path, "Input trace")
      ->required();
  compare_cmd->add_option("--policy", compare.policy_specs,
                          "Policy spec (repeatable)");
  compare_cmd
      ->add_option("--policies", [&compare](const std::vector<std::string>& values) {
        for (const auto& value : values) {
          std::string rest = value;
          size_t pos = 0;
          while ((pos = rest.find(',')) != std::string::npos) {
            compare.policy_specs.push_back(rest.substr(0, pos));
            rest.erase(0, pos + 1);
          }
          if (!rest.empty()) compare.policy_specs.push_back(rest);
        }
        return true;
      },
      "Comma-separated policy specs");
  compare_cmd->add_option("--out", compare.out_dir, "Output directory")
      ->capture_default_str();
  compare_cmd->add_flag("--quality-gate", compare.quality_gate,
                        "Fail (exit 4) when benchmark quality moves more than "
                        "1.5 pp");
  compare_cmd->add_flag("--fallback", compare.fallback,
                        "Simulate FP16 instead of erroring on unusable cells");
  compare_cmd->add_flag("--zero-overhead", compare.zero_overhead,
                        "Ignore measured routing overhead");
  compare_cmd->add_option("--inject-overhead", compare.inject_overhead_ms,
                          "Synthetic per-request routing overhead in ms")
      ->capture_default_str();
  compare.profile.attach(compare_cmd);
  compare.constraints.attach(compare_cmd);
  compare.classifier.attach(compare_cmd);

  BuildDatasetCmd build_dataset;
  auto* dataset_cmd = app.add_subcommand(
      "build-dataset", "Label a trace with the oracle (or rule policy)");
  dataset_cmd->add_option("--trace", build_dataset.trace_path, "Input trace")
      ->required();
  dataset_cmd->add_option("--labeler", build_dataset.labeler,
                          "oracle | rule")->capture_default_str();
  dataset_cmd->add_option("--out", build_dataset.out, "Dataset output path")
      ->required();
  build_dataset.profile.attach(dataset_cmd);
  build_dataset.constraints.attach(dataset_cmd);
  build_dataset.classifier.attach(dataset_cmd);

  TrainCmd train;
  auto* train_cmd =
      app.add_subcommand("train", "Train a learned router from a dataset");
  train_cmd->add_option("--dataset", train.dataset_path, "Dataset file")
      ->required();
  train_cmd->add_option("--model", train.model_kind,
                        "tree | forest | logistic")->capture_default_str();
  train_cmd->add_option("--out", train.out, "Model output path")->required();
  train_cmd->add_option("--max-depth", train.max_depth, "Tree depth limit")
      ->capture_default_str();
  train_cmd->add_option("--min-samples-split", train.min_samples_split,
                        "Minimum rows to split a node")->capture_default_str();
  train_cmd->add_option("--n-trees", train.n_trees, "Forest size")
      ->capture_default_str();
  train_cmd->add_option("--features-per-split", train.features_per_split,
                        "Features sampled per split (0 = sqrt)")
      ->capture_default_str();
  train_cmd->add_option("--lr", train.learning_rate,
                        "Logistic learning rate")->capture_default_str();
  train_cmd->add_option("--iterations", train.iterations,
                        "Logistic gradient steps")->capture_default_str();
  train_cmd->add_option("--l2", train.l2, "Logistic L2 strength")
      ->capture_default_str();
  train_cmd->add_option("--test-fraction", train.test_fraction,
                        "Held-out fraction for the stratified split")
      ->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "Training seed")
      ->capture_default_str();

  EnergyCmd energy;
  auto* energy_cmd = app.add_subcommand(
      "energy", "Integrate a power trace into joules per token");
  energy_cmd->add_option("--power-trace", energy.power_trace_path,
                         "CSV with header timestamp_ms,power_w")->required();
  energy_cmd->add_option("--tokens", energy.tokens, "Generated token count")
      ->required();

  std::string write_profile_out;
  auto* profile_cmd = app.add_subcommand(
      "write-profile", "Write the built-in default profile to a file");
  profile_cmd->add_option("--out", write_profile_out, "Profile output path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (gen_cmd->parsed()) {
      gen_trace.run();
    } else if (route_cmd->parsed()) {
      route.run();
    } else if (simulate_cmd->parsed()) {
      simulate.policy_specs = {simulate_policy};
      return simulate.run();
    } else if (compare_cmd->parsed()) {
      if (compare.policy_specs.empty()) {
        throw ms::ConfigError("compare needs at least one --policy");
      }
      return compare.run();
    } else if (dataset_cmd->parsed()) {
      build_dataset.run();
    } else if (train_cmd->parsed()) {
      train.run();
    } else if (energy_cmd->parsed()) {
      energy.run();
    } else if (profile_cmd->parsed()) {
      ms::save_profile(ms::default_profile(), write_profile_out);
      std::cout << "wrote default profile to " << write_profile_out << '\n';
    }
    return kExitOk;
  } catch (const ms::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ms::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}

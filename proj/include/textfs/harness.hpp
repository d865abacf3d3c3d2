#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "textfs/corpus.hpp"
#include "textfs/hybrid.hpp"
#include "textfs/metrics.hpp"
#include "textfs/stats.hpp"

namespace textfs::harness {

enum class Algorithm { TlboGwo, Tlbo, Gwo, None };

Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm a);
// Comma-separated list, or "all" for every arm.
std::vector<Algorithm> parse_algorithms(const std::string& list);

struct ExperimentConfig {
  std::string corpus;
  std::string format = "dirs";
  std::string dataset;  // defaults to the corpus file or directory name
  std::vector<Algorithm> algorithms{Algorithm::TlboGwo};
  std::size_t iter_max = 500;
  std::size_t pop = 30;
  double p_max = 0.08;
  std::size_t k = 0;  // 0: number of distinct labels
  std::size_t kmeans_max_iter = 50;
  std::size_t runs = 20;
  std::uint64_t seed = 1;
  std::string out;
  std::string stopwords;  // empty: bundled list
  unsigned threads = 1;

  // Unknown keys are rejected; missing keys keep their defaults.
  static ExperimentConfig from_json(const nlohmann::json& j, ExperimentConfig base);
  static ExperimentConfig from_json(const nlohmann::json& j);
  // Fields that determine results (excludes out and threads).
  nlohmann::json to_json() const;
  void validate() const;
};

struct Dataset {
  std::string name;
  std::vector<corpus::RawDocument> documents;
  corpus::Vsm vsm;
  std::vector<std::string> labels;
  std::size_t k = 0;
};

Dataset prepare_dataset(const ExperimentConfig& config);
Dataset make_dataset(std::string name, std::vector<corpus::RawDocument> docs, const ExperimentConfig& config);

struct RunReport {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  metrics::MetricsReport metrics;
  std::size_t selected = 0;  // popcount of the global mask
  double wall_seconds = 0.0;
  FeatureMask global_mask;
  std::vector<hybrid::DocumentRunResult> per_document;
  std::vector<std::size_t> assignment;
  std::size_t kmeans_iterations = 0;
};

struct Aggregate {
  metrics::MetricsReport mean;
  metrics::MetricsReport stddev;
};

struct ArmResult {
  Algorithm algorithm = Algorithm::TlboGwo;
  std::vector<RunReport> runs;
  Aggregate aggregate;
};

// Per-document optimizer for one arm. None has no optimizer.
hybrid::DocumentOptimizer make_optimizer(Algorithm a, const ExperimentConfig& config);

// One seeded run: selection (unless None), reduction, K-means, metrics.
RunReport run_once(const Dataset& data, const ExperimentConfig& config, Algorithm a, std::size_t run);

Aggregate aggregate(const std::vector<RunReport>& runs);

using RunCallback = std::function<void(const RunReport&)>;

// All runs of one arm. A failing run aborts with its index; runs completed
// before it have already been handed to on_run.
ArmResult run_arm(const Dataset& data, const ExperimentConfig& config, Algorithm a, const RunCallback& on_run = {});

struct ComparisonRow {
  std::string dataset;
  std::string measure;
  std::string arm_a;
  std::string arm_b;
  stats::Method method = stats::Method::WelchT;
  double p_value = 1.0;
  bool significant = false;
};

// metric samples per arm: arm name -> one MetricsReport per run.
using ArmSamples = std::map<std::string, std::vector<metrics::MetricsReport>>;

// Proposed arm versus every other arm on accuracy, precision, recall and
// F-measure with both tests, one-sided.
std::vector<ComparisonRow> compare_arms(const ArmSamples& arms, const std::string& dataset,
                                        const std::string& proposed = "tlbo-gwo", double alpha = 0.05);

struct ExperimentResult {
  Dataset dataset;
  std::vector<ArmResult> arms;
  std::vector<ComparisonRow> comparison;
};

// Runs every configured arm. With an output directory, a single arm writes
// into it directly; several arms write one subdirectory each plus
// comparison.csv at the top.
ExperimentResult run_experiment(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config, Dataset data);

// Report files.
nlohmann::json summary_json(const ArmResult& arm, const Dataset& data, const ExperimentConfig& config);
void write_run_artifacts(const RunReport& run, const Dataset& data, const std::filesystem::path& dir);
void emit_reports(const ArmResult& arm, const Dataset& data, const ExperimentConfig& config,
                  const std::filesystem::path& dir);
void write_runs_csv(const std::vector<RunReport>& runs, const std::filesystem::path& path);
void write_comparison(const std::vector<ComparisonRow>& rows, const std::filesystem::path& path);
void write_trace_csv(const opt::Trace& trace, const std::filesystem::path& path);

// Reads an arm's summary.json back into (algorithm name, per-run metrics, dataset).
struct ArmSummary {
  std::string dataset;
  std::string algorithm;
  std::vector<metrics::MetricsReport> runs;
};
ArmSummary read_summary(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& contents);

}  // namespace textfs::harness

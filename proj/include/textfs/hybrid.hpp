#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "textfs/corpus.hpp"
#include "textfs/optcore.hpp"

namespace textfs::hybrid {

using opt::Population;

struct HybridConfig {
  std::size_t iter_max = 500;
  std::size_t pop = 30;
  double p_max = 0.08;
  std::uint64_t seed = 0;
  // Magnitude of the position assigned to bits produced by crossover or
  // mutation: +m for 1-bits, -m for 0-bits. sigmoid(4) ~ 0.982.
  double position_magnitude = 4.0;

  void validate() const;
};

struct DocumentRunResult {
  std::size_t doc_index = 0;
  FeatureMask best_mask;
  double best_fitness = 0.0;
  opt::Trace trace;
};

struct GlobalSelection {
  FeatureMask global_mask;
  std::vector<DocumentRunResult> per_document;
  double reduction_ratio = 0.0;
};

enum class Stage { Teaching, InteractiveLearning, SelfLearning };

// Called at the entry of every stage; used to verify stage ordering.
using StageObserver = std::function<void(std::size_t iteration, Stage stage)>;

// Crossover of every member with the teacher (best member at entry); the
// child replaces the member only when strictly fitter. Accepted children get
// +/-magnitude positions matching their bits.
void teaching_stage(Population& pop, std::span<const double> weights, RngStream& rng, double magnitude = 4.0);

// GWO update of every member around leaders frozen at stage entry. The new
// position and mask replace the member unconditionally; the archive is
// refreshed afterwards.
void interactive_learning_stage(Population& pop, std::span<const double> weights, double a, RngStream& rng);

// Rank-based per-bit mutation with greedy acceptance.
void self_learning_stage(Population& pop, std::span<const double> weights, const opt::MutationPolicy& policy,
                         RngStream& rng, double magnitude = 4.0);

Population init_population(std::span<const double> weights, std::size_t pop, RngStream& rng, double magnitude = 4.0);

DocumentRunResult run_document_fs(std::span<const double> weights, const HybridConfig& config, RngStream& rng,
                                  const StageObserver& observer = {});

// Per-document optimizer used by run_corpus_fs: (weights, stream) -> result.
using DocumentOptimizer = std::function<opt::OptimizerResult(std::span<const double>, RngStream&)>;

struct CorpusRunOptions {
  std::uint64_t seed = 0;
  // Identity of each row for substream derivation (seed ^ id). Defaults to the row index.
  std::vector<std::uint64_t> doc_ids;
  unsigned threads = 1;
};

// Runs `optimizer` on every nonzero row of canonical_scale(vsm) and ORs the
// per-document best masks. Fitness values are reported on the input scale.
GlobalSelection run_corpus_fs(const corpus::WeightMatrix& vsm, const DocumentOptimizer& optimizer,
                              const CorpusRunOptions& options);

// run_corpus_fs with the hybrid optimizer and seed taken from the config.
GlobalSelection run_corpus_fs(const corpus::WeightMatrix& vsm, const HybridConfig& config, unsigned threads = 1);

}  // namespace textfs::hybrid

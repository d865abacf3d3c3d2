#include "textfs/hybrid.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "textfs/baselines.hpp"

namespace textfs::hybrid {

void HybridConfig::validate() const {
  if (pop < 3) throw std::invalid_argument("TLBO-GWO needs a population of at least 3");
  if (!(p_max > 0.0 && p_max <= 1.0)) throw std::invalid_argument("p_max must be in (0, 1]");
  if (!(position_magnitude > 0.0)) throw std::invalid_argument("position_magnitude must be > 0");
}

Population init_population(std::span<const double> weights, std::size_t pop, RngStream& rng, double magnitude) {
  if (weights.empty()) throw std::invalid_argument("run_document_fs: weight vector must have t >= 1");
  Population p;
  p.members.resize(pop);
  for (auto& m : p.members) {
    m.mask = opt::random_mask(weights.size(), rng);
    m.position = opt::position_from_mask(m.mask, magnitude);
    opt::evaluate(m, weights);
  }
  p.update_archive();
  return p;
}

void teaching_stage(Population& pop, std::span<const double> weights, RngStream& rng, double magnitude) {
  const FeatureMask teacher = pop.members[pop.best_member()].mask;
  for (auto& member : pop.members) {
    FeatureMask child = opt::uniform_crossover(member.mask, teacher, rng);
    const double f = opt::mad_fitness(child, weights);
    if (f > member.fitness) {
      member.position = opt::position_from_mask(child, magnitude);
      member.mask = std::move(child);
      member.fitness = f;
    }
  }
  pop.update_archive();
}

void interactive_learning_stage(Population& pop, std::span<const double> weights, double a, RngStream& rng) {
  pop.update_archive();
  const auto leaders = baselines::select_leaders(pop, a);
  for (auto& member : pop.members) {
    member.position = baselines::wolf_update(member.position, leaders, rng);
    member.mask = opt::sigmoid_binarize(member.position, rng);
    opt::evaluate(member, weights);
  }
  pop.update_archive();
}

void self_learning_stage(Population& pop, std::span<const double> weights, const opt::MutationPolicy& policy,
                         RngStream& rng, double magnitude) {
  std::vector<double> fitness(pop.members.size());
  for (std::size_t i = 0; i < fitness.size(); ++i) fitness[i] = pop.members[i].fitness;
  const auto ranks = opt::rank_population(fitness);
  const std::size_t n = pop.members.size();
  for (std::size_t l = 0; l < n; ++l) {
    const double p = opt::rank_mutation_prob(ranks[l], n, policy.p_max);
    if (p == 0.0) continue;
    auto& member = pop.members[l];
    FeatureMask child = opt::mutate(member.mask, p, rng);
    const double f = opt::mad_fitness(child, weights);
    if (f > member.fitness) {
      member.position = opt::position_from_mask(child, magnitude);
      member.mask = std::move(child);
      member.fitness = f;
    }
  }
  pop.update_archive();
}

DocumentRunResult run_document_fs(std::span<const double> weights, const HybridConfig& config, RngStream& rng,
                                  const StageObserver& observer) {
  config.validate();
  Population pop = init_population(weights, config.pop, rng, config.position_magnitude);
  const opt::MutationPolicy policy{config.p_max};

  DocumentRunResult result;
  result.trace.reserve(config.iter_max + 1);
  result.trace.push_back(pop.trace_point());
  for (std::size_t it = 1; it <= config.iter_max; ++it) {
    if (observer) observer(it, Stage::Teaching);
    teaching_stage(pop, weights, rng, config.position_magnitude);
    if (observer) observer(it, Stage::InteractiveLearning);
    interactive_learning_stage(pop, weights, baselines::decay_a(it, config.iter_max), rng);
    if (observer) observer(it, Stage::SelfLearning);
    self_learning_stage(pop, weights, policy, rng, config.position_magnitude);
    result.trace.push_back(pop.trace_point());
  }
  result.best_mask = pop.best.mask;
  result.best_fitness = pop.best.fitness;
  return result;
}

GlobalSelection run_corpus_fs(const corpus::WeightMatrix& raw, const DocumentOptimizer& optimizer,
                              const CorpusRunOptions& options) {
  // MAD scales with the weights, so optimizing on the canonical scale selects
  // the same masks while making them independent of the idf log base.
  const corpus::WeightMatrix vsm = corpus::canonical_scale(raw);
  const double scale = corpus::max_weight(raw);
  const std::size_t n = vsm.n();
  if (n == 0) throw std::invalid_argument("run_corpus_fs: empty corpus");
  if (!options.doc_ids.empty() && options.doc_ids.size() != n)
    throw std::invalid_argument("run_corpus_fs: doc_ids length must equal document count");

  GlobalSelection sel;
  sel.per_document.resize(n);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        auto& out = sel.per_document[i];
        out.doc_index = i;
        if (vsm.row_is_zero(i)) {
          out.best_mask = FeatureMask(vsm.t());
          continue;
        }
        const std::uint64_t id = options.doc_ids.empty() ? i : options.doc_ids[i];
        RngStream rng(derive_seed(options.seed, id));
        auto r = optimizer(vsm.row(i), rng);
        out.best_mask = std::move(r.best_mask);
        out.best_fitness = r.best_fitness * scale;
        out.trace = std::move(r.trace);
        for (auto& point : out.trace) {
          point.best *= scale;
          point.mean *= scale;
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  sel.global_mask = FeatureMask(vsm.t());
  for (const auto& d : sel.per_document) sel.global_mask |= d.best_mask;
  sel.reduction_ratio =
      vsm.t() == 0 ? 0.0 : 1.0 - static_cast<double>(sel.global_mask.popcount()) / static_cast<double>(vsm.t());
  return sel;
}

GlobalSelection run_corpus_fs(const corpus::WeightMatrix& vsm, const HybridConfig& config, unsigned threads) {
  config.validate();
  auto optimizer = [&config](std::span<const double> w, RngStream& rng) {
    auto r = run_document_fs(w, config, rng);
    return opt::OptimizerResult{std::move(r.best_mask), r.best_fitness, std::move(r.trace)};
  };
  return run_corpus_fs(vsm, optimizer, CorpusRunOptions{config.seed, {}, threads});
}

}  // namespace textfs::hybrid

#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <vector>

#include "textfs/baselines.hpp"
#include "textfs/hybrid.hpp"
#include "textfs/synthetic.hpp"

using namespace textfs;
using namespace textfs::hybrid;
using Catch::Approx;

namespace {

std::vector<double> random_weights(std::size_t t, std::uint64_t seed) {
  RngStream r(seed);
  std::vector<double> w(t);
  for (auto& x : w) x = r.uniform(0.0, 10.0);
  return w;
}

std::vector<double> fitnesses(const Population& pop) {
  std::vector<double> f;
  for (const auto& m : pop.members) f.push_back(m.fitness);
  return f;
}

HybridConfig config(std::size_t iters, std::size_t pop, std::uint64_t seed = 0) {
  HybridConfig c;
  c.iter_max = iters;
  c.pop = pop;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("teaching stage is greedy", "[hybrid]") {
  const auto w = random_weights(24, 1);
  RngStream r(1);
  auto pop = init_population(w, 20, r);
  for (int it = 0; it < 20; ++it) {
    const auto before = fitnesses(pop);
    const double archive = pop.best.fitness;
    teaching_stage(pop, w, r);
    const auto after = fitnesses(pop);
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(after[i] >= before[i]);
    CHECK(pop.best.fitness >= archive);
  }
}

TEST_CASE("teaching stage leaves a population of clones unchanged", "[hybrid]") {
  const auto w = random_weights(10, 2);
  RngStream r(2);
  auto pop = init_population(w, 5, r);
  for (auto& m : pop.members) m = pop.members[0];
  const auto before = pop.members;
  teaching_stage(pop, w, r);
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(pop.members[i].mask == before[i].mask);
    CHECK(pop.members[i].position == before[i].position);
  }
}

TEST_CASE("accepted children get positions matching their bits", "[hybrid]") {
  const auto w = random_weights(16, 3);
  RngStream r(3);
  auto pop = init_population(w, 10, r, 4.0);
  for (int it = 0; it < 5; ++it) {
    teaching_stage(pop, w, r, 4.0);
    self_learning_stage(pop, w, opt::MutationPolicy{0.08}, r, 4.0);
  }
  for (const auto& m : pop.members) CHECK(m.position == opt::position_from_mask(m.mask, 4.0));
}

TEST_CASE("interactive stage at the consensus point keeps positions", "[hybrid]") {
  const auto w = random_weights(8, 4);
  RngStream r(4);
  auto pop = init_population(w, 6, r);
  const auto consensus = pop.members[0].position;
  for (auto& m : pop.members) m.position = consensus;
  const double archive = pop.best.fitness;
  interactive_learning_stage(pop, w, 0.0, r);
  for (const auto& m : pop.members) {
    REQUIRE(m.position.size() == consensus.size());
    for (std::size_t j = 0; j < consensus.size(); ++j) CHECK(m.position[j] == Approx(consensus[j]).margin(1e-12));
    CHECK(m.fitness == opt::mad_fitness(m.mask, w));
  }
  CHECK(pop.best.fitness >= archive);
}

TEST_CASE("interactive stage uses leaders frozen at entry", "[hybrid]") {
  const auto w = random_weights(12, 5);
  RngStream r1(5);
  auto pop = init_population(w, 8, r1);
  const auto leaders = baselines::select_leaders(pop, 1.0);
  RngStream a(77), b(77);
  auto staged = pop;
  interactive_learning_stage(staged, w, 1.0, a);
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    const auto x = baselines::wolf_update(pop.members[i].position, leaders, b);
    const auto mask = opt::sigmoid_binarize(x, b);
    CHECK(staged.members[i].position == x);
    CHECK(staged.members[i].mask == mask);
  }
}

TEST_CASE("self-learning stage never mutates the best member and is greedy", "[hybrid]") {
  const auto w = random_weights(30, 6);
  RngStream r(6);
  auto pop = init_population(w, 15, r);
  for (int it = 0; it < 20; ++it) {
    const auto best = pop.best_member();
    const auto best_mask = pop.members[best].mask;
    const auto before = fitnesses(pop);
    self_learning_stage(pop, w, opt::MutationPolicy{0.08}, r);
    CHECK(pop.members[best].mask == best_mask);
    const auto after = fitnesses(pop);
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(after[i] >= before[i]);
  }
}

TEST_CASE("stages run in teaching, interactive, self-learning order", "[hybrid]") {
  const auto w = random_weights(10, 7);
  RngStream r(7);
  std::vector<std::pair<std::size_t, Stage>> events;
  run_document_fs(w, config(4, 6), r, [&](std::size_t it, Stage s) { events.emplace_back(it, s); });
  REQUIRE(events.size() == 12);
  const Stage order[] = {Stage::Teaching, Stage::InteractiveLearning, Stage::SelfLearning};
  for (std::size_t k = 0; k < events.size(); ++k) {
    CHECK(events[k].first == k / 3 + 1);
    CHECK(events[k].second == order[k % 3]);
  }
}

TEST_CASE("document run is deterministic and its trace is monotone", "[hybrid][property]") {
  const auto w = random_weights(20, 8);
  RngStream a(8), b(8);
  const auto r1 = run_document_fs(w, config(60, 20), a);
  const auto r2 = run_document_fs(w, config(60, 20), b);
  CHECK(r1.best_mask == r2.best_mask);
  CHECK(r1.trace == r2.trace);
  REQUIRE(r1.trace.size() == 61);
  for (std::size_t i = 1; i < r1.trace.size(); ++i) CHECK(r1.trace[i].best >= r1.trace[i - 1].best);
  CHECK(r1.best_fitness == opt::mad_fitness(r1.best_mask, w));
  CHECK(r1.trace.back().best == r1.best_fitness);
}

TEST_CASE("constant weights give zero fitness", "[hybrid]") {
  const std::vector<double> w(9, 1.5);
  RngStream r(9);
  CHECK(run_document_fs(w, config(20, 10), r).best_fitness == 0.0);
}

TEST_CASE("configuration validation", "[hybrid]") {
  const std::vector<double> w(5, 1.0);
  RngStream r(1);
  CHECK_THROWS_AS(run_document_fs(w, config(5, 2), r), std::invalid_argument);
  auto bad = config(5, 10);
  bad.p_max = 0.0;
  CHECK_THROWS_AS(run_document_fs(w, bad, r), std::invalid_argument);
  bad = config(5, 10);
  bad.position_magnitude = 0.0;
  CHECK_THROWS_AS(run_document_fs(w, bad, r), std::invalid_argument);
  CHECK_THROWS_AS(run_document_fs(std::vector<double>{}, config(5, 10), r), std::invalid_argument);
}

TEST_CASE("hybrid matches or beats the plain baselines on the desk corpus", "[hybrid][statistical]") {
  const auto vsm = corpus::build_vsm(synthetic::make_desk_corpus());
  for (std::size_t doc : {1u, 14u, 27u}) {
    const auto w = vsm.weights.row(doc);
    double hyb = 0, tlbo = 0, gwo = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      RngStream a(seed), b(seed), c(seed);
      hyb += run_document_fs(w, config(100, 30), a).best_fitness;
      tlbo += baselines::run_tlbo(w, {100, 30, false}, b).best_fitness;
      gwo += baselines::run_gwo(w, {100, 30}, c).best_fitness;
    }
    INFO("doc " << doc);
    CHECK(hyb >= tlbo);
    CHECK(hyb >= gwo);
  }
}

TEST_CASE("corpus selection ORs the document masks", "[hybrid][corpus]") {
  const auto vsm = corpus::build_vsm(synthetic::make_desk_corpus());
  const auto sel = run_corpus_fs(vsm.weights, config(20, 10, 5));
  REQUIRE(sel.per_document.size() == vsm.weights.n());
  auto merged = FeatureMask(vsm.weights.t());
  for (const auto& d : sel.per_document) {
    auto with = sel.global_mask;
    with |= d.best_mask;
    CHECK(with == sel.global_mask);
    merged |= d.best_mask;
  }
  CHECK(merged == sel.global_mask);
  const double t = static_cast<double>(vsm.weights.t());
  CHECK(sel.reduction_ratio == Approx(1.0 - static_cast<double>(sel.global_mask.popcount()) / t));
}

TEST_CASE("single and disjoint documents", "[hybrid][corpus]") {
  corpus::WeightMatrix one(1, 4);
  one.at(0, 0) = 1.0;
  one.at(0, 1) = 3.0;
  one.at(0, 3) = 0.5;
  const auto s1 = run_corpus_fs(one, config(10, 8, 1));
  CHECK(s1.global_mask == s1.per_document[0].best_mask);

  corpus::WeightMatrix two(2, 8);
  for (std::size_t j = 0; j < 4; ++j) two.at(0, j) = 1.0 + static_cast<double>(j);
  for (std::size_t j = 4; j < 8; ++j) two.at(1, j) = 2.0 * static_cast<double>(j);
  auto cfg = config(30, 10, 2);
  const auto opt = [&cfg](std::span<const double> w, RngStream& rng) {
    auto r = run_document_fs(w, cfg, rng);
    // Restrict each document's mask to its own nonzero columns.
    FeatureMask m(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) m.set(j, r.best_mask.test(j) && w[j] != 0.0);
    return opt::OptimizerResult{m, r.best_fitness, r.trace};
  };
  const auto s2 = run_corpus_fs(two, opt, {2, {}, 1});
  CHECK(s2.global_mask.popcount() ==
        s2.per_document[0].best_mask.popcount() + s2.per_document[1].best_mask.popcount());
}

TEST_CASE("zero rows are skipped", "[hybrid][corpus]") {
  corpus::WeightMatrix w(3, 5);
  w.at(0, 0) = 1.0;
  w.at(0, 2) = 4.0;
  w.at(2, 1) = 2.0;
  w.at(2, 4) = 0.5;
  const auto sel = run_corpus_fs(w, config(10, 6, 3));
  CHECK(sel.per_document[1].best_mask.none());
  CHECK(sel.per_document[1].trace.empty());
}

TEST_CASE("permuting documents permutes results and keeps the global mask", "[hybrid][corpus][property]") {
  const auto vsm = corpus::build_vsm(synthetic::make_desk_corpus());
  const auto& w = vsm.weights;
  const std::size_t n = w.n();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  RngStream shuffle(99);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[shuffle.below(i + 1)]);

  corpus::WeightMatrix permuted(n, w.t());
  std::vector<std::uint64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < w.t(); ++j) permuted.at(i, j) = w.at(perm[i], j);
    ids[i] = perm[i];
  }
  const auto cfg = config(15, 8, 11);
  const DocumentOptimizer optimizer = [&cfg](std::span<const double> x, RngStream& rng) {
    auto r = run_document_fs(x, cfg, rng);
    return opt::OptimizerResult{r.best_mask, r.best_fitness, r.trace};
  };
  const auto base = run_corpus_fs(w, optimizer, {11, {}, 1});
  const auto moved = run_corpus_fs(permuted, optimizer, {11, ids, 3});
  CHECK(base.global_mask == moved.global_mask);
  for (std::size_t i = 0; i < n; ++i) CHECK(moved.per_document[i].best_mask == base.per_document[perm[i]].best_mask);
}

TEST_CASE("thread count does not change results", "[hybrid][corpus]") {
  const auto vsm = corpus::build_vsm(synthetic::make_desk_corpus());
  const auto a = run_corpus_fs(vsm.weights, config(10, 8, 4), 1);
  const auto b = run_corpus_fs(vsm.weights, config(10, 8, 4), 4);
  CHECK(a.global_mask == b.global_mask);
  for (std::size_t i = 0; i < a.per_document.size(); ++i) CHECK(a.per_document[i].trace == b.per_document[i].trace);
}

TEST_CASE("optimizer failures propagate", "[hybrid][corpus]") {
  corpus::WeightMatrix w(4, 3);
  for (std::size_t i = 0; i < 4; ++i) w.at(i, i % 3) = 1.0;
  const DocumentOptimizer failing = [](std::span<const double>, RngStream&) -> opt::OptimizerResult {
    throw std::runtime_error("boom");
  };
  CHECK_THROWS_WITH(run_corpus_fs(w, failing, {0, {}, 2}), "boom");
  CHECK_THROWS_AS(run_corpus_fs(w, failing, {0, {1, 2}, 1}), std::invalid_argument);
}

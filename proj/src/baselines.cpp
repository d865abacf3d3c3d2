#include "textfs/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace textfs::baselines {

Population init_population(std::span<const double> weights, std::size_t pop, RngStream& rng) {
  if (weights.empty()) throw std::invalid_argument("optimizer: weight vector must have t >= 1");
  if (pop == 0) throw std::invalid_argument("optimizer: population must be non-empty");
  Population p;
  p.members.resize(pop);
  for (auto& m : p.members) {
    m.position = opt::random_position(weights.size(), rng);
    m.mask = opt::sigmoid_binarize(m.position, rng);
    opt::evaluate(m, weights);
  }
  p.update_archive();
  return p;
}

Position teacher_step(const Position& x, const Position& mean, const Position& teacher, double tf, double r) {
  Position out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + r * (teacher[j] - tf * mean[j]);
  return out;
}

Position learner_step(const Position& xi, const Position& xj, double fi, double fj, double r, bool minimize) {
  // Toward j when j is better, otherwise away from it.
  const bool j_better = minimize ? fj < fi : fj >= fi;
  Position out(xi.size());
  for (std::size_t d = 0; d < xi.size(); ++d)
    out[d] = j_better ? xi[d] + r * (xj[d] - xi[d]) : xi[d] + r * (xi[d] - xj[d]);
  return out;
}

Position mean_position(const Population& pop) {
  Position mean(pop.members.front().position.size(), 0.0);
  for (const auto& m : pop.members)
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += m.position[j];
  for (auto& v : mean) v /= static_cast<double>(pop.members.size());
  return mean;
}

namespace {

void try_replace(Individual& member, Position candidate, std::span<const double> weights, RngStream& rng) {
  Individual next;
  next.mask = opt::sigmoid_binarize(candidate, rng);
  next.position = std::move(candidate);
  opt::evaluate(next, weights);
  if (next.fitness > member.fitness) member = std::move(next);
}

}  // namespace

void teacher_phase(Population& pop, std::span<const double> weights, const Position& teacher, int tf,
                   RngStream& rng) {
  if (pop.members.empty()) throw std::invalid_argument("teacher_phase: empty population");
  const Position mean = mean_position(pop);
  for (auto& member : pop.members) {
    const double r = rng.uniform();
    try_replace(member, teacher_step(member.position, mean, teacher, tf, r), weights, rng);
  }
}

void learner_phase(Population& pop, std::span<const double> weights, RngStream& rng, bool minimize) {
  const std::size_t n = pop.members.size();
  if (n < 2) throw std::invalid_argument("learner_phase: population must have at least 2 members");
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = rng.below(n - 1);
    if (j >= i) ++j;
    const double r = rng.uniform();
    const auto& xi = pop.members[i];
    const auto& xj = pop.members[j];
    try_replace(pop.members[i], learner_step(xi.position, xj.position, xi.fitness, xj.fitness, r, minimize),
                weights, rng);
  }
}

OptimizerResult run_tlbo(std::span<const double> weights, const TlboConfig& config, RngStream& rng) {
  Population pop = init_population(weights, config.pop, rng);
  OptimizerResult result;
  result.trace.reserve(config.iter_max + 1);
  result.trace.push_back(pop.trace_point());
  for (std::size_t it = 1; it <= config.iter_max; ++it) {
    const Position teacher = pop.members[pop.best_member()].position;
    const int tf = 1 + static_cast<int>(rng.below(2));
    teacher_phase(pop, weights, teacher, tf, rng);
    learner_phase(pop, weights, rng, config.minimize);
    pop.update_archive();
    result.trace.push_back(pop.trace_point());
  }
  result.best_mask = pop.best.mask;
  result.best_fitness = pop.best.fitness;
  return result;
}

double decay_a(std::size_t t, std::size_t iter_max) {
  if (t > iter_max) throw std::invalid_argument("decay_a: iteration exceeds iter_max");
  if (iter_max == 0) return 2.0;
  return 2.0 - 2.0 * static_cast<double>(t) / static_cast<double>(iter_max);
}

GwoState select_leaders(const Population& pop, double a, std::size_t iteration) {
  if (pop.members.size() < 3) throw std::invalid_argument("GWO needs at least 3 members");
  const auto& m = pop.members;
  std::array<std::size_t, 3> top{};
  std::size_t filled = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::size_t pos = filled;
    while (pos > 0 && m[i].fitness > m[top[pos - 1]].fitness) --pos;
    if (pos >= 3) continue;
    for (std::size_t k = std::min<std::size_t>(filled, 2); k > pos; --k) top[k] = top[k - 1];
    top[pos] = i;
    if (filled < 3) ++filled;
  }
  return GwoState{a, m[top[0]], m[top[1]], m[top[2]], iteration};
}

WolfDraws WolfDraws::sample(std::size_t t, RngStream& rng) {
  WolfDraws d;
  for (std::size_t l = 0; l < 3; ++l) {
    d.r1[l].resize(t);
    d.r2[l].resize(t);
    for (std::size_t j = 0; j < t; ++j) {
      d.r1[l][j] = rng.uniform();
      d.r2[l][j] = rng.uniform();
    }
  }
  return d;
}

Position wolf_update(const Position& x, const GwoState& state, const WolfDraws& draws) {
  const std::array<const Position*, 3> leaders{&state.alpha.position, &state.beta.position,
                                               &state.delta.position};
  Position out(x.size(), 0.0);
  for (std::size_t l = 0; l < 3; ++l) {
    const Position& lead = *leaders[l];
    if (lead.size() != x.size()) throw std::invalid_argument("wolf_update: leader length mismatch");
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double A = 2.0 * state.a * draws.r1[l][j] - state.a;
      const double C = 2.0 * draws.r2[l][j];
      const double D = std::abs(C * lead[j] - x[j]);
      out[j] += lead[j] - A * D;
    }
  }
  for (auto& v : out) v /= 3.0;
  return out;
}

Position wolf_update(const Position& x, const GwoState& state, RngStream& rng) {
  return wolf_update(x, state, WolfDraws::sample(x.size(), rng));
}

OptimizerResult run_gwo(std::span<const double> weights, const GwoConfig& config, RngStream& rng) {
  if (config.pop < 3) throw std::invalid_argument("run_gwo: population must have at least 3 members");
  Population pop = init_population(weights, config.pop, rng);
  OptimizerResult result;
  result.trace.reserve(config.iter_max + 1);
  result.trace.push_back(pop.trace_point());
  for (std::size_t it = 1; it <= config.iter_max; ++it) {
    const GwoState state = select_leaders(pop, decay_a(it, config.iter_max), it);
    for (auto& member : pop.members) {
      member.position = wolf_update(member.position, state, rng);
      member.mask = opt::sigmoid_binarize(member.position, rng);
      opt::evaluate(member, weights);
    }
    pop.update_archive();
    result.trace.push_back(pop.trace_point());
  }
  result.best_mask = pop.best.mask;
  result.best_fitness = pop.best.fitness;
  return result;
}

}  // namespace textfs::baselines

#include "textfs/optcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace textfs::opt {

void Population::update_archive() {
  for (const auto& m : members)
    if (best.mask.empty() || m.fitness > best.fitness) best = m;
}

double Population::mean_fitness() const {
  if (members.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& m : members) sum += m.fitness;
  return sum / static_cast<double>(members.size());
}

std::size_t Population::best_member() const {
  std::size_t best_idx = 0;
  for (std::size_t i = 1; i < members.size(); ++i)
    if (members[i].fitness > members[best_idx].fitness) best_idx = i;
  return best_idx;
}

FeatureMask random_mask(std::size_t t, RngStream& rng) {
  if (t == 0) throw std::invalid_argument("random_mask: t must be >= 1");
  FeatureMask m(t);
  do {
    for (std::size_t j = 0; j < t; ++j) m.set(j, rng.coin());
  } while (m.none());
  return m;
}

double mad_fitness(const FeatureMask& mask, std::span<const double> weights) {
  if (mask.size() != weights.size())
    throw std::invalid_argument("mad_fitness: mask and weight lengths differ");
  const auto& bits = mask.bits();
  std::size_t count = 0;
  double sum = 0.0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j]) {
      sum += weights[j];
      ++count;
    }
  }
  if (count <= 1) return 0.0;
  const double mean = sum / static_cast<double>(count);
  double dev = 0.0;
  for (std::size_t j = 0; j < bits.size(); ++j)
    if (bits[j]) dev += std::abs(weights[j] - mean);
  return dev / static_cast<double>(count);
}

void evaluate(Individual& ind, std::span<const double> weights) { ind.fitness = mad_fitness(ind.mask, weights); }

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

FeatureMask sigmoid_binarize(std::span<const double> position, RngStream& rng) {
  FeatureMask m(position.size());
  for (std::size_t j = 0; j < position.size(); ++j) m.set(j, rng.uniform() < sigmoid(position[j]));
  return m;
}

FeatureMask sigmoid_binarize(std::span<const double> position, std::span<const double> draws) {
  if (draws.size() != position.size()) throw std::invalid_argument("sigmoid_binarize: draw count mismatch");
  FeatureMask m(position.size());
  for (std::size_t j = 0; j < position.size(); ++j) m.set(j, draws[j] < sigmoid(position[j]));
  return m;
}

FeatureMask uniform_crossover(const FeatureMask& student, const FeatureMask& teacher, const FeatureMask& selector) {
  if (student.size() != teacher.size() || selector.size() != student.size())
    throw std::invalid_argument("uniform_crossover: length mismatch");
  FeatureMask child(student.size());
  for (std::size_t j = 0; j < student.size(); ++j)
    child.set(j, selector.test(j) ? student.test(j) : teacher.test(j));
  return child;
}

FeatureMask uniform_crossover(const FeatureMask& student, const FeatureMask& teacher, RngStream& rng) {
  if (student.size() != teacher.size()) throw std::invalid_argument("uniform_crossover: length mismatch");
  FeatureMask selector(student.size());
  for (std::size_t j = 0; j < selector.size(); ++j) selector.set(j, rng.coin());
  return uniform_crossover(student, teacher, selector);
}

double rank_mutation_prob(std::size_t rank, std::size_t n, double p_max) {
  if (n < 2) throw std::invalid_argument("rank_mutation_prob: population size must be >= 2");
  if (rank < 1 || rank > n) throw std::invalid_argument("rank_mutation_prob: rank out of range");
  return p_max * (1.0 - static_cast<double>(rank - 1) / static_cast<double>(n - 1));
}

FeatureMask mutate(const FeatureMask& mask, double p, RngStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mutate: probability must be in [0, 1]");
  FeatureMask out = mask;
  if (p == 0.0) return out;
  for (std::size_t j = 0; j < out.size(); ++j)
    if (rng.uniform() < p) out.flip(j);
  return out;
}

std::vector<std::size_t> rank_population(std::span<const double> fitnesses) {
  std::vector<std::size_t> order(fitnesses.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Ascending fitness; among ties the higher index comes first so the lower
  // index ends up with the higher rank.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (fitnesses[a] != fitnesses[b]) return fitnesses[a] < fitnesses[b];
    return a > b;
  });
  std::vector<std::size_t> ranks(fitnesses.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) ranks[order[pos]] = pos + 1;
  return ranks;
}

Position position_from_mask(const FeatureMask& mask, double magnitude) {
  Position p(mask.size());
  for (std::size_t j = 0; j < mask.size(); ++j) p[j] = mask.test(j) ? magnitude : -magnitude;
  return p;
}

Position random_position(std::size_t t, RngStream& rng, double lo, double hi) {
  Position p(t);
  for (auto& x : p) x = rng.uniform(lo, hi);
  return p;
}

}  // namespace textfs::opt

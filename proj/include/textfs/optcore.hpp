#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "textfs/mask.hpp"
#include "textfs/rng.hpp"

// Binary-optimization building blocks shared by every feature-selection
// optimizer: representation, MAD fitness, transfer function and the genetic
// operators.
namespace textfs::opt {

// Continuous search position paired with a mask; binarized through sigmoid().
using Position = std::vector<double>;

struct Individual {
  Position position;
  FeatureMask mask;
  double fitness = 0.0;
};

struct TracePoint {
  double best = 0.0;  // archive fitness
  double mean = 0.0;  // population mean fitness
  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

// Entry 0 is the initial population, entry k the state after iteration k.
using Trace = std::vector<TracePoint>;

struct Population {
  std::vector<Individual> members;
  Individual best;  // best-so-far archive

  // Copies any member that beats the archive into it.
  void update_archive();
  double mean_fitness() const;
  std::size_t best_member() const;  // index of the fittest member, lowest index on ties
  TracePoint trace_point() const { return {best.fitness, mean_fitness()}; }
};

struct OptimizerResult {
  FeatureMask best_mask;
  double best_fitness = 0.0;
  Trace trace;
};

struct MutationPolicy {
  double p_max = 0.08;
};

// Each bit is 1 with probability 1/2; an all-zero draw is redrawn.
FeatureMask random_mask(std::size_t t, RngStream& rng);

// Mean absolute deviation of the selected weights around their mean.
// Masks with fewer than two selected features score 0.
double mad_fitness(const FeatureMask& mask, std::span<const double> weights);

void evaluate(Individual& ind, std::span<const double> weights);

// Logistic transfer function 1 / (1 + e^-x).
double sigmoid(double x);

// Bit j is 1 iff u_j < sigmoid(x_j), with u_j drawn from U[0,1).
FeatureMask sigmoid_binarize(std::span<const double> position, RngStream& rng);
FeatureMask sigmoid_binarize(std::span<const double> position, std::span<const double> draws);

// Bit j comes from the student where selector_j = 1 and from the teacher otherwise.
FeatureMask uniform_crossover(const FeatureMask& student, const FeatureMask& teacher,
                              const FeatureMask& selector);
FeatureMask uniform_crossover(const FeatureMask& student, const FeatureMask& teacher, RngStream& rng);

// p = p_max * (1 - (rank - 1) / (N - 1)); rank N is the best member.
double rank_mutation_prob(std::size_t rank, std::size_t n, double p_max);

// Flips each bit independently with probability p.
FeatureMask mutate(const FeatureMask& mask, double p, RngStream& rng);

// Highest fitness gets rank N, lowest rank 1. Among equal fitnesses the lower
// index receives the higher rank.
std::vector<std::size_t> rank_population(std::span<const double> fitnesses);

// +magnitude for selected bits, -magnitude otherwise.
Position position_from_mask(const FeatureMask& mask, double magnitude = 1.0);

// U[lo, hi) per dimension.
Position random_position(std::size_t t, RngStream& rng, double lo = -1.0, double hi = 1.0);

}  // namespace textfs::opt

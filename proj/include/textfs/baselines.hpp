#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "textfs/optcore.hpp"

// Plain binary TLBO and GWO. Both keep a continuous position per member and
// sample its mask through the sigmoid transfer function before every fitness
// evaluation.
namespace textfs::baselines {

using opt::Individual;
using opt::OptimizerResult;
using opt::Population;
using opt::Position;

struct TlboConfig {
  std::size_t iter_max = 500;
  std::size_t pop = 30;
  // Use the learner-phase branches as printed for minimization problems.
  // The default moves each learner toward the fitter partner, which is the
  // correct direction for the maximized MAD fitness.
  bool minimize = false;
};

struct GwoConfig {
  std::size_t iter_max = 500;
  std::size_t pop = 30;
};

// Random U[-1, 1] positions, binarized and evaluated.
Population init_population(std::span<const double> weights, std::size_t pop, RngStream& rng);

// X + r * (teacher - tf * mean)
Position teacher_step(const Position& x, const Position& mean, const Position& teacher, double tf, double r);

// Moves x_i toward the fitter of (i, j) under maximization; away from it when
// minimize is set.
Position learner_step(const Position& xi, const Position& xj, double fi, double fj, double r,
                      bool minimize = false);

Position mean_position(const Population& pop);

// Teaching factor is passed in so the caller controls its draw. Members are
// replaced only when the candidate is strictly fitter.
void teacher_phase(Population& pop, std::span<const double> weights, const Position& teacher, int tf,
                   RngStream& rng);

void learner_phase(Population& pop, std::span<const double> weights, RngStream& rng, bool minimize = false);

OptimizerResult run_tlbo(std::span<const double> weights, const TlboConfig& config, RngStream& rng);

// a = 2 - 2 * t / iter_max
double decay_a(std::size_t t, std::size_t iter_max);

struct GwoState {
  double a = 2.0;
  Individual alpha;
  Individual beta;
  Individual delta;
  std::size_t iteration = 0;
};

// Three fittest members, lower index first on ties.
GwoState select_leaders(const Population& pop, double a, std::size_t iteration = 0);

// Per-leader random vectors, r1 and r2 each in [0, 1).
struct WolfDraws {
  std::array<Position, 3> r1;
  std::array<Position, 3> r2;

  static WolfDraws sample(std::size_t t, RngStream& rng);
};

Position wolf_update(const Position& x, const GwoState& state, const WolfDraws& draws);
Position wolf_update(const Position& x, const GwoState& state, RngStream& rng);

OptimizerResult run_gwo(std::span<const double> weights, const GwoConfig& config, RngStream& rng);

}  // namespace textfs::baselines

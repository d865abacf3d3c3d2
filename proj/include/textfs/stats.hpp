#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace textfs::stats {

enum class Method { WelchT, MannWhitney };

const char* method_name(Method m);

struct TestResult {
  double statistic = 0.0;  // Welch t, or U of the first sample
  double p_value = 1.0;    // one-sided, alternative "a is greater than b"
  Method method = Method::WelchT;
  bool exact = false;      // Mann-Whitney only: p from the exact null distribution
};

// One-sided Welch two-sample t-test of H1: mean(a) > mean(b).
TestResult t_test(std::span<const double> a, std::span<const double> b);

// Upper tail P(T >= t) of Student's t with (possibly fractional) df.
double t_upper_tail(double t, double df);

// One-sided Mann-Whitney U test of H1: a tends to be larger than b.
// Exact when there are no ties and |a| + |b| <= kExactLimit; otherwise a
// normal approximation with tie-corrected variance and continuity correction.
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

inline constexpr std::size_t kExactLimit = 12;

// P(U >= u) under H0 for tie-free samples of sizes na and nb, by counting
// rank subsets. u may be fractional; it is rounded up.
double mann_whitney_exact_upper(double u, std::size_t na, std::size_t nb);

// Normal-approximation path, exposed for comparison against the exact one.
double mann_whitney_normal_upper(std::span<const double> a, std::span<const double> b);

}  // namespace textfs::stats

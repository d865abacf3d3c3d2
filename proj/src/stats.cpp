#include "textfs/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace textfs::stats {

const char* method_name(Method m) { return m == Method::WelchT ? "t-test" : "mann-whitney"; }

namespace {

void check_sample(std::span<const double> s, const char* who) {
  if (s.size() < 2) throw std::invalid_argument(std::string(who) + ": samples need at least 2 values");
  for (double v : s)
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(who) + ": non-finite sample value");
}

double mean(std::span<const double> s) { return std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size()); }

double sample_variance(std::span<const double> s, double m) {
  double acc = 0.0;
  for (double v : s) acc += (v - m) * (v - m);
  return acc / static_cast<double>(s.size() - 1);
}

}  // namespace

double t_upper_tail(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("t_upper_tail: df must be positive");
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const boost::math::students_t_distribution<double> dist(df);
  return boost::math::cdf(boost::math::complement(dist, t));
}

TestResult t_test(std::span<const double> a, std::span<const double> b) {
  check_sample(a, "t_test");
  check_sample(b, "t_test");
  const double ma = mean(a), mb = mean(b);
  const double qa = sample_variance(a, ma) / static_cast<double>(a.size());
  const double qb = sample_variance(b, mb) / static_cast<double>(b.size());
  TestResult r;
  r.method = Method::WelchT;
  const double se2 = qa + qb;
  if (se2 == 0.0) {
    // Both samples constant: the limit of the statistic decides.
    if (ma == mb) {
      r.statistic = 0.0;
      r.p_value = 0.5;
    } else {
      r.statistic = ma > mb ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
      r.p_value = ma > mb ? 0.0 : 1.0;
    }
    return r;
  }
  r.statistic = (ma - mb) / std::sqrt(se2);
  const double df = se2 * se2 / (qa * qa / static_cast<double>(a.size() - 1) +
                                 qb * qb / static_cast<double>(b.size() - 1));
  r.p_value = t_upper_tail(r.statistic, df);
  return r;
}

namespace {

struct RankInfo {
  double rank_sum_a = 0.0;
  bool ties = false;
  double tie_term = 0.0;  // sum of (t^3 - t) over tie groups
};

RankInfo rank_samples(std::span<const double> a, std::span<const double> b) {
  std::vector<std::pair<double, bool>> all;  // value, from a
  all.reserve(a.size() + b.size());
  for (double v : a) all.emplace_back(v, true);
  for (double v : b) all.emplace_back(v, false);
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  RankInfo info;
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i;
    while (j + 1 < all.size() && all[j + 1].first == all[i].first) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    const auto group = static_cast<double>(j - i + 1);
    if (j > i) {
      info.ties = true;
      info.tie_term += group * group * group - group;
    }
    for (std::size_t k = i; k <= j; ++k)
      if (all[k].second) info.rank_sum_a += midrank;
    i = j + 1;
  }
  return info;
}

}  // namespace

double mann_whitney_exact_upper(double u, std::size_t na, std::size_t nb) {
  const std::size_t n = na + nb;
  const std::size_t max_sum = n * (n + 1) / 2;
  // ways[k][s]: number of k-subsets of ranks {1..m} with sum s, built up over m.
  std::vector<std::vector<double>> ways(na + 1, std::vector<double>(max_sum + 1, 0.0));
  ways[0][0] = 1.0;
  for (std::size_t rank = 1; rank <= n; ++rank)
    for (std::size_t k = std::min(rank, na); k >= 1; --k)
      for (std::size_t s = max_sum; s >= rank; --s) ways[k][s] += ways[k - 1][s - rank];

  const double offset = static_cast<double>(na * (na + 1) / 2);
  const double threshold = std::ceil(u + offset - 1e-9);
  double hits = 0.0, total = 0.0;
  for (std::size_t s = 0; s <= max_sum; ++s) {
    total += ways[na][s];
    if (static_cast<double>(s) >= threshold) hits += ways[na][s];
  }
  return hits / total;
}

double mann_whitney_normal_upper(std::span<const double> a, std::span<const double> b) {
  const auto info = rank_samples(a, b);
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  const double n = na + nb;
  const double u = info.rank_sum_a - na * (na + 1.0) / 2.0;
  const double mu = na * nb / 2.0;
  const double var = na * nb / 12.0 * ((n + 1.0) - info.tie_term / (n * (n - 1.0)));
  if (var <= 0.0) return 1.0;  // every value tied: U equals its mean with certainty
  const double z = (u - mu - 0.5) / std::sqrt(var);
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  check_sample(a, "mann_whitney_u");
  check_sample(b, "mann_whitney_u");
  const auto info = rank_samples(a, b);
  const auto na = static_cast<double>(a.size());
  TestResult r;
  r.method = Method::MannWhitney;
  r.statistic = info.rank_sum_a - na * (na + 1.0) / 2.0;
  if (!info.ties && a.size() + b.size() <= kExactLimit) {
    r.exact = true;
    r.p_value = mann_whitney_exact_upper(r.statistic, a.size(), b.size());
  } else {
    r.p_value = mann_whitney_normal_upper(a, b);
  }
  return r;
}

}  // namespace textfs::stats

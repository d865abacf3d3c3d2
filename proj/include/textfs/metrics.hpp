#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace textfs::metrics {

// Pair-counting confusion over all unordered document pairs.
struct ConfusionCounts {
  std::uint64_t tp = 0;  // same cluster, same label
  std::uint64_t tn = 0;  // different cluster, different label
  std::uint64_t fp = 0;  // same cluster, different label
  std::uint64_t fn = 0;  // different cluster, same label

  std::uint64_t total() const { return tp + tn + fp + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct MetricsReport {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  double reduction_ratio = 0.0;
};

ConfusionCounts pairwise_counts(const std::vector<std::size_t>& assignment, const std::vector<std::string>& labels);

// 0/0 evaluates to 0 in every ratio.
double accuracy(const ConfusionCounts& c);
double precision(const ConfusionCounts& c);
double recall(const ConfusionCounts& c);
double f_measure(const ConfusionCounts& c);

MetricsReport evaluate(const ConfusionCounts& c, double reduction_ratio = 0.0);

// 1 - selected / original.
double reduction_ratio(std::size_t t_original, std::size_t t_selected);

}  // namespace textfs::metrics

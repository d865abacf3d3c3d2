#include "textfs/metrics.hpp"

#include <stdexcept>

namespace textfs::metrics {

ConfusionCounts pairwise_counts(const std::vector<std::size_t>& assignment, const std::vector<std::string>& labels) {
  if (assignment.size() != labels.size())
    throw std::invalid_argument("pairwise_counts: assignment and label lengths differ");
  if (assignment.size() < 2) throw std::invalid_argument("pairwise_counts: need at least 2 documents");
  ConfusionCounts c;
  const std::size_t n = assignment.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same_cluster = assignment[i] == assignment[j];
      const bool same_label = labels[i] == labels[j];
      if (same_cluster && same_label)
        ++c.tp;
      else if (same_cluster)
        ++c.fp;
      else if (same_label)
        ++c.fn;
      else
        ++c.tn;
    }
  return c;
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double accuracy(const ConfusionCounts& c) { return ratio(c.tp + c.tn, c.total()); }
double precision(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fp); }
double recall(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fn); }

double f_measure(const ConfusionCounts& c) {
  const double p = precision(c);
  const double r = recall(c);
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

MetricsReport evaluate(const ConfusionCounts& c, double reduction_ratio) {
  return {accuracy(c), precision(c), recall(c), f_measure(c), reduction_ratio};
}

double reduction_ratio(std::size_t t_original, std::size_t t_selected) {
  if (t_selected == 0) throw std::invalid_argument("reduction_ratio: selected feature count must be positive");
  if (t_selected > t_original) throw std::invalid_argument("reduction_ratio: selected exceeds original");
  return 1.0 - static_cast<double>(t_selected) / static_cast<double>(t_original);
}

}  // namespace textfs::metrics

#include "textfs/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace textfs::kmeans {

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("cosine_similarity: length mismatch");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    dot += u[j] * v[j];
    nu += u[j] * u[j];
    nv += v[j] * v[j];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

namespace {

bool rows_equal(const corpus::WeightMatrix& vsm, std::size_t a, std::size_t b) {
  const auto ra = vsm.row(a);
  const auto rb = vsm.row(b);
  return std::equal(ra.begin(), ra.end(), rb.begin());
}

Centroid row_copy(const corpus::WeightMatrix& vsm, std::size_t i) {
  const auto r = vsm.row(i);
  return Centroid(r.begin(), r.end());
}

}  // namespace

std::vector<Centroid> seed_centroids(const corpus::WeightMatrix& vsm, std::size_t k) {
  const std::size_t n = vsm.n();
  if (k == 0) throw std::invalid_argument("seed_centroids: k must be positive");
  if (k > n) throw std::invalid_argument("seed_centroids: k exceeds document count");

  std::vector<double> mean_sim(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = cosine_similarity(vsm.row(i), vsm.row(j));
      mean_sim[i] += s;
      mean_sim[j] += s;
    }
  if (n > 1)
    for (auto& s : mean_sim) s /= static_cast<double>(n - 1);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mean_sim[a] > mean_sim[b]; });

  std::vector<std::size_t> chosen;
  for (std::size_t i : order) {
    if (chosen.size() == k) break;
    if (vsm.row_is_zero(i)) continue;
    const bool duplicate =
        std::any_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return rows_equal(vsm, c, i); });
    if (!duplicate) chosen.push_back(i);
  }
  if (chosen.size() < k)
    throw std::invalid_argument("seed_centroids: k = " + std::to_string(k) + " exceeds the " +
                                std::to_string(chosen.size()) + " distinct nonzero documents");

  std::vector<Centroid> centroids;
  centroids.reserve(k);
  for (std::size_t i : chosen) centroids.push_back(row_copy(vsm, i));
  return centroids;
}

std::vector<std::size_t> assign(const corpus::WeightMatrix& vsm, const std::vector<Centroid>& centroids) {
  if (centroids.empty()) throw std::invalid_argument("assign: no centroids");
  std::vector<std::size_t> out(vsm.n(), 0);
  for (std::size_t i = 0; i < vsm.n(); ++i) {
    double best = cosine_similarity(vsm.row(i), centroids[0]);
    for (std::size_t c = 1; c < centroids.size(); ++c) {
      const double s = cosine_similarity(vsm.row(i), centroids[c]);
      if (s > best) {
        best = s;
        out[i] = c;
      }
    }
  }
  return out;
}

std::vector<Centroid> update_centroids(const corpus::WeightMatrix& vsm, const std::vector<std::size_t>& assignment,
                                       std::size_t k) {
  if (assignment.size() != vsm.n()) throw std::invalid_argument("update_centroids: assignment length mismatch");
  std::vector<Centroid> centroids(k, Centroid(vsm.t(), 0.0));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < vsm.n(); ++i) {
    const std::size_t c = assignment[i];
    if (c >= k) throw std::invalid_argument("update_centroids: cluster index out of range");
    if (vsm.row_is_zero(i)) continue;
    const auto r = vsm.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) centroids[c][j] += r[j];
    ++counts[c];
  }
  std::vector<std::size_t> references;
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;
    for (auto& v : centroids[c]) v /= static_cast<double>(counts[c]);
    references.push_back(c);
  }

  std::vector<bool> used(vsm.n(), false);
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] != 0) continue;
    std::size_t pick = vsm.n();
    double pick_score = 0.0;
    for (std::size_t i = 0; i < vsm.n(); ++i) {
      if (used[i] || vsm.row_is_zero(i)) continue;
      double nearest = -1.0;
      for (std::size_t r : references) nearest = std::max(nearest, cosine_similarity(vsm.row(i), centroids[r]));
      if (pick == vsm.n() || nearest < pick_score) {
        pick = i;
        pick_score = nearest;
      }
    }
    if (pick == vsm.n()) continue;  // no nonzero documents left; centroid stays zero
    used[pick] = true;
    centroids[c] = row_copy(vsm, pick);
    references.push_back(c);
  }
  return centroids;
}

ClusterModel run_kmeans(const corpus::WeightMatrix& raw, std::size_t k, std::size_t max_iter) {
  // Cosine and centroid means are scale-equivariant; the canonical scale makes
  // ties and near-ties resolve identically for any positive rescaling.
  const corpus::WeightMatrix vsm = corpus::canonical_scale(raw);
  if (k < 2 || k > vsm.n())
    throw std::invalid_argument("run_kmeans: k must satisfy 2 <= k <= n (k = " + std::to_string(k) +
                                ", n = " + std::to_string(vsm.n()) + ")");
  ClusterModel model;
  model.k = k;
  model.centroids = seed_centroids(vsm, k);
  model.assignment = assign(vsm, model.centroids);
  while (model.iterations_run < max_iter) {
    auto centroids = update_centroids(vsm, model.assignment, k);
    auto next = assign(vsm, centroids);
    ++model.iterations_run;
    model.centroids = std::move(centroids);
    const bool stable = next == model.assignment;
    model.assignment = std::move(next);
    if (stable) break;
  }

  // All-zero documents join the largest cluster.
  std::vector<std::size_t> sizes(k, 0);
  std::vector<std::size_t> zero_rows;
  for (std::size_t i = 0; i < vsm.n(); ++i) {
    if (vsm.row_is_zero(i))
      zero_rows.push_back(i);
    else
      ++sizes[model.assignment[i]];
  }
  if (!zero_rows.empty()) {
    const auto largest =
        static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    for (std::size_t i : zero_rows) model.assignment[i] = largest;
  }
  return model;
}

void write_assignment(std::ostream& out, const std::vector<std::size_t>& assignment) {
  out << "doc_index,cluster\n";
  for (std::size_t i = 0; i < assignment.size(); ++i) out << i << ',' << assignment[i] << '\n';
}

std::vector<std::size_t> read_assignment(std::istream& in) {
  std::string line;
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (lineno == 1 && line == "doc_index,cluster")) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("assignment line " + std::to_string(lineno) + ": expected doc_index,cluster");
    try {
      rows.emplace_back(std::stoul(line.substr(0, comma)), std::stoul(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw std::runtime_error("assignment line " + std::to_string(lineno) + ": bad integer");
    }
  }
  std::vector<std::size_t> out(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [i, c] : rows) {
    if (i >= out.size() || seen[i]) throw std::runtime_error("assignment: doc indices must be 0..n-1 without gaps");
    seen[i] = true;
    out[i] = c;
  }
  return out;
}

}  // namespace textfs::kmeans

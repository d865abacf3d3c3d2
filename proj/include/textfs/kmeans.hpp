#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "textfs/corpus.hpp"

namespace textfs::kmeans {

using Centroid = std::vector<double>;

struct ClusterModel {
  std::size_t k = 0;
  std::vector<Centroid> centroids;
  std::vector<std::size_t> assignment;
  std::size_t iterations_run = 0;
};

// Cosine of the angle between u and v; 0 when either vector has zero norm.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

// The k documents with the highest mean cosine similarity to all other
// documents, skipping rows identical to an already chosen one. Ties go to the
// lower document index.
std::vector<Centroid> seed_centroids(const corpus::WeightMatrix& vsm, std::size_t k);

// Most similar centroid per document, lowest centroid index on ties.
std::vector<std::size_t> assign(const corpus::WeightMatrix& vsm, const std::vector<Centroid>& centroids);

// Mean of the nonzero member rows per cluster. A cluster without members is
// reseeded with the nonzero document whose best similarity to the other
// centroids is lowest.
std::vector<Centroid> update_centroids(const corpus::WeightMatrix& vsm, const std::vector<std::size_t>& assignment,
                                       std::size_t k);

// Deterministic loop of update and assign until the assignment stops
// changing or max_iter rounds have run. All-zero documents end up in the
// largest cluster. Runs on canonical_scale(vsm), so centroids are reported on
// that scale and any positive rescaling of vsm yields the same model.
ClusterModel run_kmeans(const corpus::WeightMatrix& vsm, std::size_t k, std::size_t max_iter = 50);

void write_assignment(std::ostream& out, const std::vector<std::size_t>& assignment);
std::vector<std::size_t> read_assignment(std::istream& in);

}  // namespace textfs::kmeans

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "textfs/corpus.hpp"
#include "textfs/kmeans.hpp"
#include "textfs/synthetic.hpp"

using namespace textfs;
using namespace textfs::kmeans;
using Catch::Approx;
using corpus::WeightMatrix;

namespace {

WeightMatrix matrix(const std::vector<std::vector<double>>& rows) {
  WeightMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

using Rows = std::vector<std::vector<double>>;
using Idx = std::vector<std::size_t>;

// Same partition up to relabeling.
bool same_partition(const Idx& a, const Idx& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

}  // namespace

TEST_CASE("cosine similarity", "[kmeans]") {
  using V = std::vector<double>;
  CHECK(cosine_similarity(V{1, 0}, V{0, 1}) == 0.0);
  CHECK(cosine_similarity(V{2, 2}, V{1, 1}) == Approx(1.0).margin(1e-15));
  CHECK(cosine_similarity(V{1, 1, 0}, V{1, 0, 1}) == Approx(0.5).margin(1e-15));
  CHECK(cosine_similarity(V{0, 0}, V{1, 1}) == 0.0);
  CHECK_THROWS_AS(cosine_similarity(V{1}, V{1, 2}), std::invalid_argument);
}

TEST_CASE("seeding picks the most central documents", "[kmeans]") {
  const auto m = matrix(Rows{{1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
  // Brute-force mean similarities: doc 1 is the most central, then docs 0 and 2 tie.
  std::vector<double> mean(4, 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) mean[i] += cosine_similarity(m.row(i), m.row(j)) / 3.0;
  REQUIRE(mean[1] > mean[0]);
  REQUIRE(mean[0] == mean[2]);
  const auto seeds = seed_centroids(m, 2);
  CHECK(seeds[0] == Centroid{1, 1, 0});
  CHECK(seeds[1] == Centroid{1, 0, 0});
  CHECK(seed_centroids(m, 4).size() == 4);
}

TEST_CASE("seeding skips duplicate rows", "[kmeans]") {
  const auto m = matrix(Rows{{0, 0, 1}, {1, 1, 0}, {1, 1, 0}, {1, 0, 0}});
  const auto seeds = seed_centroids(m, 2);
  CHECK(seeds[0] == Centroid{1, 1, 0});
  CHECK(seeds[1] == Centroid{1, 0, 0});
  CHECK_THROWS_AS(seed_centroids(m, 4), std::invalid_argument);
}

TEST_CASE("seeding with two separated blobs takes one interior point from each", "[kmeans]") {
  // Blob A in columns 0-1, blob B in columns 2-3, mirrored so both blobs are equally tight.
  const auto m = matrix(Rows{{3, 1, 0, 0}, {2, 2, 0, 0}, {1, 3, 0, 0}, {0, 0, 3, 1}, {0, 0, 2, 2}, {0, 0, 1, 3}});
  std::vector<double> mean(6, 0.0);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      if (i != j) mean[i] += cosine_similarity(m.row(i), m.row(j));
  // The interior points 1 and 4 have the largest similarity sums.
  for (std::size_t i : {0u, 2u, 3u, 5u}) {
    CHECK(mean[1] > mean[i]);
    CHECK(mean[4] > mean[i]);
  }
  const auto seeds = seed_centroids(m, 2);
  CHECK(seeds[0] == Centroid{2, 2, 0, 0});
  CHECK(seeds[1] == Centroid{0, 0, 2, 2});
}

TEST_CASE("assignment uses argmax with lower-index ties", "[kmeans]") {
  const auto m = matrix(Rows{{0, 1, 0}, {1, 0, 1}, {5, 5, 5}});
  const std::vector<Centroid> c{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const auto a = assign(m, c);
  CHECK(a[0] == 1);
  CHECK(a[1] == 0);
  CHECK(a[2] == 0);
  CHECK(assign(m, {Centroid{1, 2, 3}}) == Idx{0, 0, 0});
}

TEST_CASE("centroid update means and reseeding", "[kmeans]") {
  const auto m = matrix(Rows{{1, 0}, {0, 1}, {3, 4}});
  auto c = update_centroids(m, {0, 0, 1}, 2);
  CHECK(c[0] == Centroid{0.5, 0.5});
  CHECK(c[1] == Centroid{3, 4});

  // Cluster 1 is empty: the reseed goes to the document least similar to centroid 0.
  const auto r = matrix(Rows{{1, 0}, {1, 0.1}, {0.2, 1}});
  c = update_centroids(r, {0, 0, 0}, 2);
  std::size_t worst = 0;
  double worst_sim = 2.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double s = cosine_similarity(r.row(i), c[0]);
    if (s < worst_sim) {
      worst_sim = s;
      worst = i;
    }
  }
  REQUIRE(worst == 2);
  CHECK(c[1] == Centroid{0.2, 1});
}

TEST_CASE("disjoint groups are recovered quickly", "[kmeans]") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const auto docs = synthetic::make_disjoint_corpus(2, 8, 10, seed);
    const auto vsm = corpus::build_vsm(docs);
    Idx truth;
    for (const auto& d : docs) truth.push_back(d.label == "class0" ? 0 : 1);
    const auto model = run_kmeans(vsm.weights, 2);
    INFO("seed " << seed);
    CHECK(same_partition(model.assignment, truth));
    CHECK(model.iterations_run <= 3);
    const auto again = run_kmeans(vsm.weights, 2);
    CHECK(again.assignment == model.assignment);
    CHECK(again.centroids == model.centroids);
  }
}

TEST_CASE("k equal to n and max_iter zero", "[kmeans]") {
  const auto m = matrix(Rows{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto all = run_kmeans(m, 3);
  CHECK(same_partition(all.assignment, Idx{0, 1, 2}));
  CHECK(all.iterations_run <= 1);
  const auto m2 = matrix(Rows{{1, 0}, {0.9, 0.1}, {0, 1}, {0.1, 0.9}});
  const auto none = run_kmeans(m2, 2, 0);
  CHECK(none.iterations_run == 0);
  CHECK(none.assignment == assign(m2, seed_centroids(m2, 2)));
  CHECK_THROWS_AS(run_kmeans(m2, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_kmeans(m2, 5), std::invalid_argument);
}

TEST_CASE("converged clustering is a fixpoint", "[kmeans][property]") {
  const auto vsm = corpus::build_vsm(synthetic::make_desk_corpus());
  const auto model = run_kmeans(vsm.weights, 3);
  REQUIRE(model.iterations_run < 50);
  const auto c1 = update_centroids(vsm.weights, model.assignment, 3);
  const auto a1 = assign(vsm.weights, c1);
  CHECK(a1 == model.assignment);
  const auto a2 = assign(vsm.weights, update_centroids(vsm.weights, a1, 3));
  CHECK(a2 == a1);
  // Every document is at least as similar to its own centroid as to any other.
  for (std::size_t i = 0; i < vsm.weights.n(); ++i)
    for (std::size_t c = 0; c < 3; ++c)
      CHECK(cosine_similarity(vsm.weights.row(i), model.centroids[model.assignment[i]]) >=
            cosine_similarity(vsm.weights.row(i), model.centroids[c]));
}

TEST_CASE("scaling the matrix leaves assignments unchanged", "[kmeans][property]") {
  const auto vsm = corpus::build_vsm(synthetic::make_desk_corpus());
  auto scaled = vsm.weights;
  for (std::size_t i = 0; i < scaled.n(); ++i)
    for (double& x : scaled.row(i)) x *= 3.7;
  CHECK(run_kmeans(scaled, 3).assignment == run_kmeans(vsm.weights, 3).assignment);
}

TEST_CASE("zero rows join the largest cluster", "[kmeans]") {
  const auto m = matrix(Rows{{1, 0}, {0.9, 0.1}, {0.8, 0.2}, {0, 1}, {0, 0}});
  const auto model = run_kmeans(m, 2);
  CHECK(model.assignment[4] == model.assignment[0]);
  CHECK(model.assignment[0] != model.assignment[3]);
}

TEST_CASE("assignment file round-trip", "[kmeans][io]") {
  std::stringstream s;
  write_assignment(s, {0, 2, 1, 1});
  CHECK(s.str().rfind("doc_index,cluster\n", 0) == 0);
  CHECK(read_assignment(s) == Idx{0, 2, 1, 1});
  std::istringstream bad("doc_index,cluster\n0,x\n");
  CHECK_THROWS(read_assignment(bad));
}

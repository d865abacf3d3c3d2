#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "textfs/corpus.hpp"
#include "textfs/kmeans.hpp"
#include "textfs/synthetic.hpp"

using namespace textfs;
using namespace textfs::corpus;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

std::vector<RawDocument> docs_of(std::initializer_list<const char*> texts) {
  std::vector<RawDocument> docs;
  for (const char* t : texts) docs.push_back({docs.size(), t, "x"});
  return docs;
}

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("textfs_test_corpus_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& s) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << s;
}

}  // namespace

TEST_CASE("tf-idf weight is tf times natural-log idf", "[corpus]") {
  // "zebra" occurs 3 times in doc 0 and once in doc 1; n = 4, df = 2.
  const auto vsm = build_vsm(docs_of({"zebra zebra zebra kiwi", "zebra kiwi", "kiwi mango", "kiwi mango"}));
  const auto& v = vsm.vocabulary;
  REQUIRE(v.terms == std::vector<std::string>{"kiwi", "mango", "zebra"});
  const std::size_t z = v.index.at("zebra");
  CHECK(v.df[z] == 2);
  CHECK(vsm.weights.at(0, z) == Approx(3.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(vsm.weights.at(0, z) == Approx(2.0794).margin(1e-4));
  // df = n gives zero weight everywhere.
  const std::size_t k = v.index.at("kiwi");
  for (std::size_t i = 0; i < 4; ++i) CHECK(vsm.weights.at(i, k) == 0.0);
  // Absent term has zero weight.
  CHECK(vsm.weights.at(0, v.index.at("mango")) == 0.0);
}

TEST_CASE("count_terms invariants", "[corpus]") {
  const auto docs = synthetic::make_desk_corpus();
  const auto counts = count_terms(docs, default_stoplist());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    std::size_t sum = 0;
    for (const auto& [term, tf] : counts.tf[i]) {
      CHECK(tf >= 1);
      sum += tf;
    }
    CHECK(sum == counts.token_counts[i]);
  }
  for (std::size_t df : counts.vocabulary.df) CHECK(df >= 1);
  CHECK(std::is_sorted(counts.vocabulary.terms.begin(), counts.vocabulary.terms.end()));
}

TEST_CASE("build_vsm rejects fewer than two documents", "[corpus]") {
  CHECK_THROWS_AS(build_vsm(docs_of({"only one"})), std::invalid_argument);
  CHECK_THROWS_AS(build_vsm({}), std::invalid_argument);
}

TEST_CASE("documents empty after preprocessing keep a zero row", "[corpus]") {
  const auto vsm = build_vsm(docs_of({"apple banana", "the and of", "banana cherry"}));
  CHECK(vsm.empty_documents == std::vector<std::size_t>{1});
  CHECK(vsm.weights.n() == 3);
  CHECK(vsm.weights.row_is_zero(1));
}

TEST_CASE("build_vsm is deterministic", "[corpus]") {
  const auto docs = synthetic::make_desk_corpus();
  const auto a = build_vsm(docs);
  const auto b = build_vsm(docs);
  CHECK(a.vocabulary.terms == b.vocabulary.terms);
  CHECK(a.weights == b.weights);
}

TEST_CASE("weights are non-negative", "[corpus]") {
  const auto vsm = build_vsm(synthetic::make_desk_corpus());
  for (std::size_t i = 0; i < vsm.weights.n(); ++i)
    for (double w : vsm.weights.row(i)) CHECK(w >= 0.0);
}

TEST_CASE("changing the log base scales every weight by one constant", "[corpus]") {
  const auto docs = synthetic::make_desk_corpus();
  const auto ln = build_vsm(docs);
  VsmOptions opts;
  opts.log_base = 10.0;
  const auto lg = build_vsm(docs, opts);
  REQUIRE(ln.vocabulary.terms == lg.vocabulary.terms);
  const double c = 1.0 / std::log(10.0);
  for (std::size_t i = 0; i < ln.weights.n(); ++i)
    for (std::size_t j = 0; j < ln.weights.t(); ++j) CHECK(lg.weights.at(i, j) == Approx(c * ln.weights.at(i, j)).margin(1e-12));
  for (std::size_t i = 0; i < ln.weights.n(); ++i)
    for (std::size_t k = 0; k < ln.weights.n(); ++k)
      CHECK(kmeans::cosine_similarity(ln.weights.row(i), ln.weights.row(k)) ==
            Approx(kmeans::cosine_similarity(lg.weights.row(i), lg.weights.row(k))).margin(1e-9));
}

TEST_CASE("reduce_vsm keeps selected columns in order", "[corpus]") {
  WeightMatrix w(2, 3);
  w.at(0, 0) = 1;
  w.at(0, 1) = 2;
  w.at(0, 2) = 3;
  w.at(1, 0) = 4;
  w.at(1, 1) = 5;
  w.at(1, 2) = 6;
  const auto r = reduce_vsm(w, FeatureMask::from_string("101"));
  REQUIRE(r.t() == 2);
  CHECK(r.at(0, 0) == 1);
  CHECK(r.at(0, 1) == 3);
  CHECK(r.at(1, 0) == 4);
  CHECK(r.at(1, 1) == 6);
  CHECK(reduce_vsm(w, FeatureMask::from_string("111")) == w);
  CHECK_THROWS_AS(reduce_vsm(w, FeatureMask::from_string("000")), std::invalid_argument);
  CHECK_THROWS_AS(reduce_vsm(w, FeatureMask::from_string("11")), std::invalid_argument);
}

TEST_CASE("directory corpus loads labels from subdirectories", "[corpus][io]") {
  const auto root = scratch_dir("dirs");
  write_file(root / "sport" / "a.txt", "football match");
  write_file(root / "sport" / "b.txt", "tennis match");
  write_file(root / "health" / "c.txt", "doctor visit");
  write_file(root / "health" / "d.txt", "nurse visit");
  write_file(root / "health" / "e.txt", "clinic visit");
  write_file(root / ".hidden" / "f.txt", "ignored");
  const auto docs = load_corpus(root, CorpusFormat::Dirs);
  REQUIRE(docs.size() == 5);
  // Labels visited in lexicographic order.
  CHECK(docs[0].label == "health");
  CHECK(docs[3].label == "sport");
  CHECK(std::count_if(docs.begin(), docs.end(), [](const auto& d) { return d.label == "sport"; }) == 2);
  for (std::size_t i = 0; i < docs.size(); ++i) CHECK(docs[i].id == i);
  CHECK(docs[0].text == "doctor visit");
}

TEST_CASE("directory corpus errors", "[corpus][io]") {
  const auto empty = scratch_dir("empty");
  CHECK_THROWS_WITH(load_corpus(empty, CorpusFormat::Dirs), Catch::Matchers::ContainsSubstring("no documents"));
  CHECK_THROWS_WITH(load_corpus(empty / "missing", CorpusFormat::Dirs),
                    Catch::Matchers::ContainsSubstring("does not exist"));
  const auto stray = scratch_dir("stray");
  write_file(stray / "loose.txt", "text");
  CHECK_THROWS_WITH(load_corpus(stray, CorpusFormat::Dirs), Catch::Matchers::ContainsSubstring("loose.txt"));
  const auto blank = scratch_dir("blank");
  write_file(blank / "a" / "x.txt", "  \n");
  CHECK_THROWS_WITH(load_corpus(blank, CorpusFormat::Dirs), Catch::Matchers::ContainsSubstring("x.txt"));
}

TEST_CASE("csv corpus with quoting", "[corpus][io]") {
  std::istringstream in(
      "label,text\n"
      "sport,\"football, \"\"soccer\"\" match\"\n"
      "sport,tennis\n"
      "health,\"multi\nline\"\n"
      "health,clinic\n");
  const auto docs = parse_csv_corpus(in, "mem.csv");
  REQUIRE(docs.size() == 4);
  CHECK(docs[0].text == "football, \"soccer\" match");
  CHECK(docs[2].text == "multi\nline");
  CHECK(docs[3].label == "health");
}

TEST_CASE("csv corpus errors name the line", "[corpus][io]") {
  std::istringstream bad_header("kind,text\nx,y\n");
  CHECK_THROWS_WITH(parse_csv_corpus(bad_header, "f.csv"), Catch::Matchers::ContainsSubstring("f.csv:1"));
  std::istringstream extra("label,text\na,b\na,b,c\n");
  CHECK_THROWS_WITH(parse_csv_corpus(extra, "f.csv"), Catch::Matchers::ContainsSubstring("f.csv:3"));
  std::istringstream open_quote("label,text\na,\"never closed\n");
  CHECK_THROWS_WITH(parse_csv_corpus(open_quote, "f.csv"), Catch::Matchers::ContainsSubstring("unterminated"));
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
  CHECK(parse_format("csv") == CorpusFormat::Csv);
}

TEST_CASE("vocabulary, vsm and labels round-trip", "[corpus][io]") {
  const auto docs = synthetic::make_desk_corpus();
  const auto vsm = build_vsm(docs);
  std::stringstream v;
  write_vocabulary(v, vsm.vocabulary);
  CHECK(read_vocabulary(v) == vsm.vocabulary.terms);
  std::stringstream m;
  write_vsm(m, vsm.weights);
  CHECK(m.str().rfind("n=30,t=", 0) == 0);
  CHECK(read_vsm(m) == vsm.weights);
  std::stringstream l;
  write_labels(l, docs);
  const auto labels = read_labels(l);
  REQUIRE(labels.size() == docs.size());
  CHECK(labels[0] == docs[0].label);
}

TEST_CASE("read_vsm rejects malformed input", "[corpus][io]") {
  std::istringstream no_header("");
  CHECK_THROWS(read_vsm(no_header));
  std::istringstream range("n=1,t=1\ndoc_index,term_index,weight\n0,5,1.0\n");
  CHECK_THROWS_WITH(read_vsm(range), Catch::Matchers::ContainsSubstring("out of range"));
  std::istringstream neg("n=1,t=1\ndoc_index,term_index,weight\n0,0,-1\n");
  CHECK_THROWS_WITH(read_vsm(neg), Catch::Matchers::ContainsSubstring("negative"));
}

TEST_CASE("synthetic corpus shape", "[corpus][synthetic]") {
  const auto docs = synthetic::make_desk_corpus();
  CHECK(docs.size() == 30);
  const auto vsm = build_vsm(docs);
  CHECK(vsm.weights.t() >= 110);
  CHECK(vsm.weights.t() <= 130);
  CHECK(vsm.empty_documents.empty());
  // Pseudo-words survive preprocessing unchanged.
  for (std::size_t i = 0; i < 200; ++i) {
    const auto w = synthetic::pseudo_word(i);
    CHECK(preprocess(w, default_stoplist()) == std::vector<std::string>{w});
  }
}

TEST_CASE("canonical scale removes positive factors", "[corpus]") {
  const auto docs = synthetic::make_desk_corpus();
  const auto ln = build_vsm(docs);
  VsmOptions opts;
  opts.log_base = 10.0;
  const auto lg = build_vsm(docs, opts);
  const auto a = canonical_scale(ln.weights);
  CHECK(a == canonical_scale(lg.weights));
  CHECK(max_weight(a) == 1.0);
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.t(); ++j) {
      CHECK((a.at(i, j) == 0.0) == (ln.weights.at(i, j) == 0.0));
      CHECK(a.at(i, j) == Approx(ln.weights.at(i, j) / max_weight(ln.weights)).epsilon(1e-9));
    }
  const WeightMatrix zero(2, 3);
  CHECK(canonical_scale(zero) == zero);
}

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "textfs/mask.hpp"
#include "textfs/text.hpp"

namespace textfs::corpus {

struct RawDocument {
  std::size_t id = 0;
  std::string text;
  std::string label;
};

struct Vocabulary {
  std::vector<std::string> terms;  // lexicographic
  std::map<std::string, std::size_t, std::less<>> index;
  std::vector<std::size_t> df;

  std::size_t size() const { return terms.size(); }
};

// Dense row-major n x t matrix of non-negative term weights. Row i is the
// vector of document i.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(std::size_t n, std::size_t t) : n_(n), t_(t), w_(n * t, 0.0) {}

  std::size_t n() const { return n_; }
  std::size_t t() const { return t_; }

  double& at(std::size_t i, std::size_t j) { return w_[i * t_ + j]; }
  double at(std::size_t i, std::size_t j) const { return w_[i * t_ + j]; }

  std::span<const double> row(std::size_t i) const { return {w_.data() + i * t_, t_}; }
  std::span<double> row(std::size_t i) { return {w_.data() + i * t_, t_}; }

  bool row_is_zero(std::size_t i) const;

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t t_ = 0;
  std::vector<double> w_;
};

struct VsmOptions {
  // idf = log_b(n / df). The natural log is the default.
  double log_base = 0.0;  // <= 0 selects the natural log
  const StopList* stoplist = nullptr;  // nullptr selects default_stoplist()
};

struct Vsm {
  Vocabulary vocabulary;
  WeightMatrix weights;
  // Documents with no tokens left after preprocessing. Their rows are all zero.
  std::vector<std::size_t> empty_documents;
};

// Term frequencies per document, before weighting. Exposed for tests.
struct TermCounts {
  Vocabulary vocabulary;
  std::vector<std::map<std::size_t, std::size_t>> tf;  // per document: term index -> count
  std::vector<std::size_t> token_counts;
};

TermCounts count_terms(const std::vector<RawDocument>& documents, const StopList& stoplist);

// TF-IDF vector space model, w = tf * log(n / df). Requires at least 2 documents.
Vsm build_vsm(const std::vector<RawDocument>& documents, const VsmOptions& options = {});

// Keeps the columns whose mask bit is set, in order.
WeightMatrix reduce_vsm(const WeightMatrix& vsm, const FeatureMask& mask);

// Divides by the largest weight and rounds every entry to kCanonicalBits
// significant bits. Matrices equal up to a positive factor (an idf log base,
// say) map to bitwise-identical results unless a rounding boundary falls
// within a few ulps, so downstream comparisons see exactly the same inputs.
inline constexpr int kCanonicalBits = 30;
WeightMatrix canonical_scale(const WeightMatrix& vsm);
// Largest entry; 0 for an all-zero matrix.
double max_weight(const WeightMatrix& vsm);

enum class CorpusFormat { Dirs, Csv };

CorpusFormat parse_format(const std::string& name);

// Dirs: one subdirectory per label, one UTF-8 text file per document, both
// visited in lexicographic order. Csv: header "label,text", RFC 4180 quoting.
std::vector<RawDocument> load_corpus(const std::filesystem::path& path, CorpusFormat format);

std::vector<RawDocument> parse_csv_corpus(std::istream& in, const std::string& source_name);

// File formats. VSM: first line "n=<n>,t=<t>", second line
// "doc_index,term_index,weight", then one row per nonzero weight.
void write_vocabulary(std::ostream& out, const Vocabulary& vocab);
std::vector<std::string> read_vocabulary(std::istream& in);
void write_vsm(std::ostream& out, const WeightMatrix& w);
WeightMatrix read_vsm(std::istream& in);
void write_labels(std::ostream& out, const std::vector<RawDocument>& documents);
std::vector<std::string> read_labels(std::istream& in);

}  // namespace textfs::corpus

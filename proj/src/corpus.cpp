#include "textfs/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace textfs::corpus {

namespace fs = std::filesystem;

bool WeightMatrix::row_is_zero(std::size_t i) const {
  for (double v : row(i))
    if (v != 0.0) return false;
  return true;
}

double max_weight(const WeightMatrix& vsm) {
  double m = 0.0;
  for (std::size_t i = 0; i < vsm.n(); ++i)
    for (double v : vsm.row(i)) m = std::max(m, v);
  return m;
}

WeightMatrix canonical_scale(const WeightMatrix& vsm) {
  WeightMatrix out = vsm;
  const double m = max_weight(vsm);
  if (m == 0.0) return out;
  for (std::size_t i = 0; i < out.n(); ++i)
    for (double& v : out.row(i)) {
      if (v == 0.0) continue;
      int e = 0;
      const double frac = std::frexp(v / m, &e);
      v = std::ldexp(std::round(std::ldexp(frac, kCanonicalBits)), e - kCanonicalBits);
    }
  return out;
}

TermCounts count_terms(const std::vector<RawDocument>& documents, const StopList& stoplist) {
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(documents.size());
  std::set<std::string, std::less<>> all_terms;
  for (const auto& doc : documents) {
    tokens.push_back(preprocess(doc.text, stoplist));
    all_terms.insert(tokens.back().begin(), tokens.back().end());
  }

  TermCounts out;
  out.vocabulary.terms.assign(all_terms.begin(), all_terms.end());
  for (std::size_t j = 0; j < out.vocabulary.terms.size(); ++j)
    out.vocabulary.index.emplace(out.vocabulary.terms[j], j);
  out.vocabulary.df.assign(out.vocabulary.terms.size(), 0);

  out.tf.resize(documents.size());
  out.token_counts.resize(documents.size());
  for (std::size_t i = 0; i < documents.size(); ++i) {
    out.token_counts[i] = tokens[i].size();
    for (const auto& tok : tokens[i]) ++out.tf[i][out.vocabulary.index.find(tok)->second];
    for (const auto& [j, count] : out.tf[i]) ++out.vocabulary.df[j];
  }
  return out;
}

Vsm build_vsm(const std::vector<RawDocument>& documents, const VsmOptions& options) {
  if (documents.size() < 2)
    throw std::invalid_argument("build_vsm: corpus needs at least 2 documents, got " +
                                std::to_string(documents.size()));
  const StopList& stoplist = options.stoplist ? *options.stoplist : default_stoplist();
  TermCounts counts = count_terms(documents, stoplist);

  const std::size_t n = documents.size();
  const std::size_t t = counts.vocabulary.size();
  const double log_scale = options.log_base > 0.0 ? std::log(options.log_base) : 1.0;

  std::vector<double> idf(t);
  for (std::size_t j = 0; j < t; ++j) {
    const double ratio = static_cast<double>(n) / static_cast<double>(counts.vocabulary.df[j]);
    idf[j] = std::log(ratio) / log_scale;
  }

  Vsm vsm;
  vsm.weights = WeightMatrix(n, t);
  for (std::size_t i = 0; i < n; ++i) {
    if (counts.token_counts[i] == 0) vsm.empty_documents.push_back(i);
    for (const auto& [j, count] : counts.tf[i])
      vsm.weights.at(i, j) = static_cast<double>(count) * idf[j];
  }
  vsm.vocabulary = std::move(counts.vocabulary);
  return vsm;
}

WeightMatrix reduce_vsm(const WeightMatrix& vsm, const FeatureMask& mask) {
  if (mask.size() != vsm.t())
    throw std::invalid_argument("reduce_vsm: mask length " + std::to_string(mask.size()) +
                                " does not match term count " + std::to_string(vsm.t()));
  const auto keep = mask.selected();
  if (keep.empty()) throw std::invalid_argument("reduce_vsm: mask selects no features");
  WeightMatrix out(vsm.n(), keep.size());
  for (std::size_t i = 0; i < vsm.n(); ++i)
    for (std::size_t c = 0; c < keep.size(); ++c) out.at(i, c) = vsm.at(i, keep[c]);
  return out;
}

CorpusFormat parse_format(const std::string& name) {
  if (name == "dirs") return CorpusFormat::Dirs;
  if (name == "csv") return CorpusFormat::Csv;
  throw std::invalid_argument("unknown corpus format '" + name + "' (expected dirs or csv)");
}

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error reading file: " + p.string());
  return ss.str();
}

bool hidden(const fs::path& p) {
  const auto name = p.filename().string();
  return !name.empty() && name.front() == '.';
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::vector<RawDocument> load_dirs(const fs::path& root) {
  if (!fs::is_directory(root)) throw std::runtime_error("corpus path is not a directory: " + root.string());
  std::vector<fs::path> label_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (hidden(entry.path())) continue;
    if (!entry.is_directory())
      throw std::runtime_error("unexpected file at corpus top level (expected label directories): " +
                               entry.path().string());
    label_dirs.push_back(entry.path());
  }
  std::sort(label_dirs.begin(), label_dirs.end());

  std::vector<RawDocument> docs;
  for (const auto& dir : label_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (hidden(entry.path())) continue;
      if (!entry.is_regular_file())
        throw std::runtime_error("unexpected non-file entry in label directory: " + entry.path().string());
      files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      RawDocument doc;
      doc.id = docs.size();
      doc.label = dir.filename().string();
      doc.text = read_file(f);
      if (blank(doc.text)) throw std::runtime_error("empty document: " + f.string());
      docs.push_back(std::move(doc));
    }
  }
  if (docs.empty()) throw std::runtime_error("corpus directory contains no documents: " + root.string());
  return docs;
}

// Reads one CSV record; returns false at end of input. Fields may be quoted
// with "" escaping and quoted fields may contain newlines.
bool read_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line,
                 const std::string& source) {
  fields.clear();
  int c = in.peek();
  if (c == EOF) return false;
  const std::size_t start_line = line;
  std::string field;
  bool quoted = false;
  bool after_quote = false;
  for (;;) {
    c = in.get();
    if (quoted) {
      if (c == EOF)
        throw std::runtime_error(source + ":" + std::to_string(start_line) + ": unterminated quoted field");
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(static_cast<char>(c));
      }
      continue;
    }
    if (c == EOF || c == '\n') {
      if (c == '\n') ++line;
      if (!field.empty() && field.back() == '\r' && !after_quote) field.pop_back();
      fields.push_back(std::move(field));
      return true;
    }
    if (c == '\r' && after_quote) continue;
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      after_quote = false;
      continue;
    }
    if (after_quote)
      throw std::runtime_error(source + ":" + std::to_string(start_line) +
                               ": unexpected character after closing quote");
    if (c == '"' && field.empty()) {
      quoted = true;
      continue;
    }
    field.push_back(static_cast<char>(c));
  }
}

}  // namespace

std::vector<RawDocument> parse_csv_corpus(std::istream& in, const std::string& source) {
  std::vector<std::string> fields;
  std::size_t line = 1;
  if (!read_record(in, fields, line, source)) throw std::runtime_error(source + ": empty file, expected header");
  if (!fields.empty() && fields[0].rfind("\xEF\xBB\xBF", 0) == 0) fields[0].erase(0, 3);
  if (fields.size() != 2 || fields[0] != "label" || fields[1] != "text")
    throw std::runtime_error(source + ":1: header must be \"label,text\"");

  std::vector<RawDocument> docs;
  for (;;) {
    const std::size_t record_line = line;
    if (!read_record(in, fields, line, source)) break;
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != 2)
      throw std::runtime_error(source + ":" + std::to_string(record_line) + ": expected 2 fields, got " +
                               std::to_string(fields.size()));
    if (fields[0].empty())
      throw std::runtime_error(source + ":" + std::to_string(record_line) + ": empty label");
    if (blank(fields[1]))
      throw std::runtime_error(source + ":" + std::to_string(record_line) + ": empty text");
    docs.push_back(RawDocument{docs.size(), std::move(fields[1]), std::move(fields[0])});
  }
  if (docs.empty()) throw std::runtime_error(source + ": no documents");
  return docs;
}

std::vector<RawDocument> load_corpus(const fs::path& path, CorpusFormat format) {
  if (!fs::exists(path)) throw std::runtime_error("corpus path does not exist: " + path.string());
  if (format == CorpusFormat::Dirs) return load_dirs(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path.string());
  return parse_csv_corpus(in, path.string());
}

void write_vocabulary(std::ostream& out, const Vocabulary& vocab) {
  for (const auto& term : vocab.terms) out << term << '\n';
}

std::vector<std::string> read_vocabulary(std::istream& in) {
  std::vector<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) terms.push_back(line);
  }
  return terms;
}

void write_vsm(std::ostream& out, const WeightMatrix& w) {
  out << "n=" << w.n() << ",t=" << w.t() << '\n';
  out << "doc_index,term_index,weight\n";
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < w.n(); ++i)
    for (std::size_t j = 0; j < w.t(); ++j)
      if (w.at(i, j) != 0.0) out << i << ',' << j << ',' << w.at(i, j) << '\n';
  out.precision(old_precision);
}

namespace {

template <typename T>
T parse_number(std::string_view s, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error("VSM line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    const auto next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) return parts;
    pos = next + 1;
  }
}

}  // namespace

WeightMatrix read_vsm(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("VSM: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto head = split(line, ',');
  if (head.size() != 2 || head[0].substr(0, 2) != "n=" || head[1].substr(0, 2) != "t=")
    throw std::runtime_error("VSM: header must be \"n=<n>,t=<t>\"");
  const auto n = parse_number<std::size_t>(head[0].substr(2), 1);
  const auto t = parse_number<std::size_t>(head[1].substr(2), 1);
  WeightMatrix w(n, t);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (lineno == 2 && line == "doc_index,term_index,weight")) continue;
    const auto parts = split(line, ',');
    if (parts.size() != 3) throw std::runtime_error("VSM line " + std::to_string(lineno) + ": expected 3 fields");
    const auto i = parse_number<std::size_t>(parts[0], lineno);
    const auto j = parse_number<std::size_t>(parts[1], lineno);
    const auto v = parse_number<double>(parts[2], lineno);
    if (i >= n || j >= t) throw std::runtime_error("VSM line " + std::to_string(lineno) + ": index out of range");
    if (!(v >= 0.0)) throw std::runtime_error("VSM line " + std::to_string(lineno) + ": negative weight");
    w.at(i, j) = v;
  }
  return w;
}

void write_labels(std::ostream& out, const std::vector<RawDocument>& documents) {
  out << "doc_index,label\n";
  for (const auto& d : documents) out << d.id << ',' << d.label << '\n';
}

std::vector<std::string> read_labels(std::istream& in) {
  std::string line;
  std::vector<std::pair<std::size_t, std::string>> rows;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (lineno == 1 && line == "doc_index,label")) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("labels line " + std::to_string(lineno) + ": expected doc_index,label");
    rows.emplace_back(parse_number<std::size_t>(std::string_view(line).substr(0, comma), lineno),
                      line.substr(comma + 1));
  }
  std::vector<std::string> labels(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (auto& [i, label] : rows) {
    if (i >= labels.size() || seen[i]) throw std::runtime_error("labels: doc indices must be 0..n-1 without gaps");
    seen[i] = true;
    labels[i] = std::move(label);
  }
  return labels;
}

}  // namespace textfs::corpus

#include "textfs/text.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace textfs::corpus {

namespace detail {
extern const std::string_view kDefaultStopwords;
}

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

char to_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_alpha(c)) {
      current.push_back(to_lower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopList& stoplist) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens)
    if (!stoplist.contains(tok)) out.push_back(tok);
  return out;
}

StopList parse_stoplist(std::string_view contents) {
  StopList words;
  std::size_t pos = 0;
  while (pos <= contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (!line.empty() && line.front() != '#') {
      std::string w;
      for (char c : line) w.push_back(to_lower(c));
      words.insert(std::move(w));
    }
    pos = end + 1;
  }
  return words;
}

StopList load_stoplist(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read stop-word file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_stoplist(ss.str());
}

const StopList& default_stoplist() {
  static const StopList list = parse_stoplist(detail::kDefaultStopwords);
  return list;
}

std::vector<std::string> preprocess(std::string_view text, const StopList& stoplist) {
  auto tokens = remove_stopwords(tokenize(text), stoplist);
  for (auto& tok : tokens) tok = stem(tok);
  return tokens;
}

}  // namespace textfs::corpus

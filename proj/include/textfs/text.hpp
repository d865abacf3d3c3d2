#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace textfs::corpus {

using StopList = std::unordered_set<std::string>;

// Maximal runs of ASCII letters, lowercased. Everything else (digits,
// punctuation, whitespace, non-ASCII bytes) separates tokens.
std::vector<std::string> tokenize(std::string_view text);

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopList& stoplist);

// Porter (1980) suffix-stripping stemmer. Input is a lowercase alphabetic token.
std::string stem(std::string_view token);

// The bundled English stop-word list.
const StopList& default_stoplist();

// One word per line; blank lines and lines starting with '#' are ignored.
StopList parse_stoplist(std::string_view contents);
StopList load_stoplist(const std::string& path);

// tokenize -> remove_stopwords -> stem, in that order.
std::vector<std::string> preprocess(std::string_view text, const StopList& stoplist);

}  // namespace textfs::corpus

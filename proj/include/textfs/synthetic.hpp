#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "textfs/corpus.hpp"

namespace textfs::synthetic {

// Labeled corpus with a private vocabulary per class plus a pool of noise
// terms shared by all classes. Noise terms are grouped into topics that cut
// across the classes: a document repeats every term of its own topic many
// times and carries most terms of the other topics once, so unfiltered
// clustering is pulled toward the noise topics.
struct DeskCorpusSpec {
  std::size_t classes = 3;
  std::size_t docs_per_class = 10;
  std::size_t informative_terms_per_class = 20;
  std::size_t informative_per_doc = 8;
  std::size_t informative_tf_min = 3;
  std::size_t informative_tf_max = 5;
  // Document 0 of each class carries every class term (an overview document).
  bool overview_documents = true;
  std::size_t noise_terms = 60;
  std::size_t noise_topics = 3;
  std::size_t noise_per_doc = 20;
  std::size_t noise_tf_min = 15;
  std::size_t noise_tf_max = 25;
  // Probability that a document contains a given noise term of another topic (once).
  double noise_background_rate = 0.75;
  std::uint64_t seed = 2024;
};

// Deterministic pseudo-word for an index; alphabetic, never a stop word, and
// unchanged by stemming.
std::string pseudo_word(std::size_t index);

std::vector<corpus::RawDocument> make_desk_corpus(const DeskCorpusSpec& spec = {});

// Corpus whose classes share no terms at all (between-class cosine is 0).
// Classes mirror each other over their own vocabularies, and every document
// carries its class's anchor term, so each class holds one top seed.
std::vector<corpus::RawDocument> make_disjoint_corpus(std::size_t classes, std::size_t docs_per_class,
                                                      std::size_t terms_per_class, std::uint64_t seed);

// Writes the directory ingestion format: <root>/<label>/<doc>.txt
void write_corpus_dirs(const std::vector<corpus::RawDocument>& docs, const std::filesystem::path& root);

}  // namespace textfs::synthetic

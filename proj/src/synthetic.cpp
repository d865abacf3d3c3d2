#include "textfs/synthetic.hpp"

#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "textfs/rng.hpp"

namespace textfs::synthetic {

namespace {

constexpr std::string_view kConsonants = "bdfgkmpvz";
constexpr std::string_view kVowels = "aiou";

std::string syllable(std::size_t s) {
  return {kConsonants[s % kConsonants.size()], kVowels[s / kConsonants.size()]};
}

// k distinct values from [0, n), in draw order.
std::vector<std::size_t> choose(std::size_t n, std::size_t k, RngStream& rng) {
  if (k > n) throw std::invalid_argument("synthetic corpus: cannot choose more terms than available");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
  pool.resize(k);
  return pool;
}

std::size_t draw_between(std::size_t lo, std::size_t hi, RngStream& rng) {
  return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

void append_word(std::string& text, const std::string& word, std::size_t times) {
  for (std::size_t r = 0; r < times; ++r) {
    if (!text.empty()) text.push_back(' ');
    text += word;
  }
}

}  // namespace

std::string pseudo_word(std::size_t index) {
  constexpr std::size_t kSyllables = kConsonants.size() * kVowels.size();
  std::string w;
  std::size_t x = index;
  for (int i = 0; i < 3; ++i) {
    w += syllable(x % kSyllables);
    x /= kSyllables;
  }
  if (x != 0) throw std::out_of_range("pseudo_word: index too large");
  return w + "x";
}

std::vector<corpus::RawDocument> make_desk_corpus(const DeskCorpusSpec& spec) {
  if (spec.classes == 0 || spec.docs_per_class == 0) throw std::invalid_argument("desk corpus: empty shape");
  if (spec.noise_topics == 0 || spec.noise_terms % spec.noise_topics != 0)
    throw std::invalid_argument("desk corpus: noise terms must split evenly into topics");
  if (spec.noise_per_doc > spec.noise_terms / spec.noise_topics)
    throw std::invalid_argument("desk corpus: noise_per_doc exceeds the topic size");
  RngStream rng(spec.seed);
  const std::size_t topic_size = spec.noise_terms / spec.noise_topics;
  const std::size_t noise_base = spec.classes * spec.informative_terms_per_class;

  std::vector<corpus::RawDocument> docs;
  for (std::size_t c = 0; c < spec.classes; ++c) {
    for (std::size_t d = 0; d < spec.docs_per_class; ++d) {
      std::string text;
      const std::size_t class_base = c * spec.informative_terms_per_class;
      const std::size_t vocab = spec.informative_terms_per_class;
      const bool overview = spec.overview_documents && d == 0;
      for (std::size_t w : choose(vocab, overview ? vocab : spec.informative_per_doc, rng))
        append_word(text, pseudo_word(class_base + w),
                    draw_between(spec.informative_tf_min, spec.informative_tf_max, rng));
      const std::size_t topic = (c + d) % spec.noise_topics;
      for (std::size_t w : choose(topic_size, spec.noise_per_doc, rng))
        append_word(text, pseudo_word(noise_base + topic * topic_size + w),
                    draw_between(spec.noise_tf_min, spec.noise_tf_max, rng));
      for (std::size_t other = 0; other < spec.noise_topics; ++other) {
        if (other == topic) continue;
        for (std::size_t w = 0; w < topic_size; ++w)
          if (rng.uniform() < spec.noise_background_rate)
            append_word(text, pseudo_word(noise_base + other * topic_size + w), 1);
      }
      docs.push_back({docs.size(), std::move(text), "class" + std::to_string(c)});
    }
  }
  return docs;
}

std::vector<corpus::RawDocument> make_disjoint_corpus(std::size_t classes, std::size_t docs_per_class,
                                                      std::size_t terms_per_class, std::uint64_t seed) {
  if (terms_per_class < 2) throw std::invalid_argument("make_disjoint_corpus: need at least 2 terms per class");
  RngStream rng(seed);
  const std::size_t per_doc = std::max<std::size_t>(2, terms_per_class / 2);
  // One pattern per document slot, shared by every class: term 0 is the anchor, the rest are drawn.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> patterns(docs_per_class);
  for (auto& pattern : patterns) {
    pattern.emplace_back(0, draw_between(1, 4, rng));
    for (std::size_t w : choose(terms_per_class - 1, per_doc - 1, rng))
      pattern.emplace_back(w + 1, draw_between(1, 4, rng));
  }
  std::vector<corpus::RawDocument> docs;
  for (std::size_t c = 0; c < classes; ++c)
    for (const auto& pattern : patterns) {
      std::string text;
      for (const auto& [w, tf] : pattern) append_word(text, pseudo_word(c * terms_per_class + w), tf);
      docs.push_back({docs.size(), std::move(text), "class" + std::to_string(c)});
    }
  return docs;
}

void write_corpus_dirs(const std::vector<corpus::RawDocument>& docs, const std::filesystem::path& root) {
  std::filesystem::create_directories(root);
  for (const auto& doc : docs) {
    const auto dir = root / doc.label;
    std::filesystem::create_directories(dir);
    std::ostringstream name;
    name << "doc" << std::setw(5) << std::setfill('0') << doc.id << ".txt";
    std::ofstream out(dir / name.str(), std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name.str()).string());
    out << doc.text << '\n';
  }
}

}  // namespace textfs::synthetic

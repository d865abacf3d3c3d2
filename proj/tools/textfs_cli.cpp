// textfs: text feature selection and clustering benchmark driver.
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "textfs/corpus.hpp"
#include "textfs/harness.hpp"
#include "textfs/hybrid.hpp"
#include "textfs/kmeans.hpp"
#include "textfs/metrics.hpp"
#include "textfs/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace textfs;

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

struct CommonFlags {
  std::string corpus, format = "dirs", algorithm = "tlbo-gwo", out, config, stopwords;
  std::size_t iters = 500, pop = 30, k = 0, runs = 20, kmeans_iter = 50;
  double pmax = 0.08;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

void cmd_preprocess(const CommonFlags& f) {
  auto docs = corpus::load_corpus(f.corpus, corpus::parse_format(f.format));
  corpus::StopList custom;
  corpus::VsmOptions opts;
  if (!f.stopwords.empty()) {
    custom = corpus::load_stoplist(f.stopwords);
    opts.stoplist = &custom;
  }
  auto vsm = corpus::build_vsm(docs, opts);
  for (std::size_t i : vsm.empty_documents)
    std::cerr << "warning: document " << i << " is empty after preprocessing\n";
  fs::create_directories(f.out);
  {
    auto out = open_out(fs::path(f.out) / "vocab.txt");
    corpus::write_vocabulary(out, vsm.vocabulary);
  }
  {
    auto out = open_out(fs::path(f.out) / "vsm.csv");
    corpus::write_vsm(out, vsm.weights);
  }
  {
    auto out = open_out(fs::path(f.out) / "labels.csv");
    corpus::write_labels(out, docs);
  }
  std::cout << "n=" << vsm.weights.n() << " t=" << vsm.weights.t() << '\n';
}

void cmd_select(const CommonFlags& f, const std::string& vsm_path, const std::string& vocab_path) {
  auto in = open_in(vsm_path);
  const auto w = corpus::read_vsm(in);
  std::vector<std::string> vocab;
  if (!vocab_path.empty()) {
    auto vin = open_in(vocab_path);
    vocab = corpus::read_vocabulary(vin);
    if (vocab.size() != w.t()) throw std::runtime_error("vocabulary size does not match VSM term count");
  }
  harness::ExperimentConfig cfg;
  cfg.iter_max = f.iters;
  cfg.pop = f.pop;
  cfg.p_max = f.pmax;
  const auto algo = harness::parse_algorithm(f.algorithm);
  if (algo == harness::Algorithm::None) throw std::invalid_argument("select needs an optimizer, not 'none'");
  const auto sel = hybrid::run_corpus_fs(w, harness::make_optimizer(algo, cfg),
                                         hybrid::CorpusRunOptions{f.seed, {}, f.threads});

  const fs::path dir(f.out);
  fs::create_directories(dir);
  harness::write_text(dir / "mask.txt", sel.global_mask.to_string() + "\n");
  std::string terms;
  for (std::size_t j : sel.global_mask.selected()) terms += (vocab.empty() ? std::to_string(j) : vocab[j]) + '\n';
  harness::write_text(dir / "selected_terms.txt", terms);

  std::ostringstream conv;
  conv.precision(17);
  conv << "doc,iter,best,mean\n";
  json per_doc = json::array();
  for (const auto& d : sel.per_document) {
    for (std::size_t it = 0; it < d.trace.size(); ++it)
      conv << d.doc_index << ',' << it << ',' << d.trace[it].best << ',' << d.trace[it].mean << '\n';
    per_doc.push_back(d.best_fitness);
  }
  harness::write_text(dir / "convergence.csv", conv.str());
  const json summary{{"algorithm", f.algorithm},
                     {"seed", f.seed},
                     {"t", w.t()},
                     {"popcount", sel.global_mask.popcount()},
                     {"reduction_ratio", sel.reduction_ratio},
                     {"per_document_best_fitness", per_doc}};
  harness::write_text(dir / "selection.json", summary.dump(2) + "\n");
  std::cout << "selected " << sel.global_mask.popcount() << " of " << w.t() << " terms (reduction ratio "
            << sel.reduction_ratio << ")\n";
}

void cmd_cluster(const CommonFlags& f, const std::string& vsm_path, const std::string& mask_path) {
  auto in = open_in(vsm_path);
  auto w = corpus::read_vsm(in);
  if (!mask_path.empty()) {
    auto min = open_in(mask_path);
    std::string bits;
    std::getline(min, bits);
    if (!bits.empty() && bits.back() == '\r') bits.pop_back();
    w = corpus::reduce_vsm(w, FeatureMask::from_string(bits));
  }
  if (f.k == 0) throw std::invalid_argument("cluster requires --k");
  const auto model = kmeans::run_kmeans(w, f.k, f.kmeans_iter);
  fs::create_directories(f.out);
  auto out = open_out(fs::path(f.out) / "assignment.csv");
  kmeans::write_assignment(out, model.assignment);
  std::cout << "converged after " << model.iterations_run << " iterations\n";
}

void cmd_evaluate(const std::string& assignment_path, const std::string& labels_path, const std::string& out_path) {
  auto ain = open_in(assignment_path);
  auto lin = open_in(labels_path);
  const auto assignment = kmeans::read_assignment(ain);
  const auto labels = corpus::read_labels(lin);
  const auto c = metrics::pairwise_counts(assignment, labels);
  const auto m = metrics::evaluate(c);
  const json j{{"tp", c.tp},           {"tn", c.tn},               {"fp", c.fp},
               {"fn", c.fn},           {"accuracy", m.accuracy},   {"precision", m.precision},
               {"recall", m.recall},   {"f_measure", m.f_measure}};
  if (out_path.empty())
    std::cout << j.dump(2) << '\n';
  else
    harness::write_text(out_path, j.dump(2) + "\n");
}

void cmd_bench(const CommonFlags& f, const CLI::App& sub) {
  harness::ExperimentConfig cfg;
  if (!f.config.empty()) {
    auto in = open_in(f.config);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw std::runtime_error(f.config + ": " + e.what());
    }
    cfg = harness::ExperimentConfig::from_json(j);
  }
  auto given = [&](const char* name) { return sub.get_option(name)->count() > 0; };
  if (given("--corpus")) cfg.corpus = f.corpus;
  if (given("--format")) cfg.format = f.format;
  if (given("--algorithm")) cfg.algorithms = harness::parse_algorithms(f.algorithm);
  if (given("--iters")) cfg.iter_max = f.iters;
  if (given("--pop")) cfg.pop = f.pop;
  if (given("--pmax")) cfg.p_max = f.pmax;
  if (given("--k")) cfg.k = f.k;
  if (given("--runs")) cfg.runs = f.runs;
  if (given("--seed")) cfg.seed = f.seed;
  if (given("--out")) cfg.out = f.out;
  if (given("--stopwords")) cfg.stopwords = f.stopwords;
  if (given("--threads")) cfg.threads = f.threads;
  if (given("--kmeans-iters")) cfg.kmeans_max_iter = f.kmeans_iter;

  const auto result = harness::run_experiment(cfg);
  for (const auto& arm : result.arms) {
    const auto& m = arm.aggregate.mean;
    std::cout << harness::algorithm_name(arm.algorithm) << ": accuracy=" << m.accuracy
              << " precision=" << m.precision << " recall=" << m.recall << " f=" << m.f_measure
              << " reduction=" << m.reduction_ratio << '\n';
  }
  for (const auto& row : result.comparison)
    std::cout << row.measure << ' ' << row.arm_a << " vs " << row.arm_b << ' ' << stats::method_name(row.method)
              << " p=" << row.p_value << (row.significant ? " *" : "") << '\n';
}

void cmd_compare(const std::vector<std::string>& summaries, const std::string& proposed, const std::string& out) {
  harness::ArmSamples arms;
  std::string dataset;
  for (const auto& path : summaries) {
    auto s = harness::read_summary(path);
    if (dataset.empty()) dataset = s.dataset;
    if (s.dataset != dataset) throw std::runtime_error("summaries come from different datasets");
    if (!arms.emplace(s.algorithm, std::move(s.runs)).second)
      throw std::runtime_error("arm '" + s.algorithm + "' given twice");
  }
  const auto rows = harness::compare_arms(arms, dataset, proposed);
  harness::write_comparison(rows, out);
  std::cout << "wrote " << rows.size() << " rows to " << out << '\n';
}

void cmd_synth(const std::string& kind, const std::string& out, std::uint64_t seed) {
  std::vector<corpus::RawDocument> docs;
  if (kind == "desk") {
    synthetic::DeskCorpusSpec spec;
    spec.seed = seed;
    docs = synthetic::make_desk_corpus(spec);
  } else if (kind == "disjoint") {
    docs = synthetic::make_disjoint_corpus(3, 10, 20, seed);
  } else {
    throw std::invalid_argument("unknown synthetic corpus kind '" + kind + "' (desk or disjoint)");
  }
  synthetic::write_corpus_dirs(docs, out);
  std::cout << "wrote " << docs.size() << " documents to " << out << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Text feature selection (TLBO-GWO) and document clustering benchmark"};
  app.require_subcommand(1);
  CommonFlags f;

  auto* pre = app.add_subcommand("preprocess", "corpus -> vocabulary, VSM and labels files");
  pre->add_option("--corpus", f.corpus, "corpus directory or CSV file")->required();
  pre->add_option("--format", f.format, "dirs or csv")->check(CLI::IsMember({"dirs", "csv"}));
  pre->add_option("--stopwords", f.stopwords, "stop-word file replacing the bundled list");
  pre->add_option("--out", f.out, "output directory")->required();

  std::string vsm_path, vocab_path, mask_path;
  auto* sel = app.add_subcommand("select", "VSM -> global feature mask and convergence traces");
  sel->add_option("--vsm", vsm_path, "VSM triplet CSV")->required();
  sel->add_option("--vocab", vocab_path, "vocabulary file for term names");
  sel->add_option("--algorithm", f.algorithm, "tlbo-gwo, tlbo or gwo");
  sel->add_option("--iters", f.iters, "iterations per document");
  sel->add_option("--pop", f.pop, "population size");
  sel->add_option("--pmax", f.pmax, "maximum mutation probability");
  sel->add_option("--seed", f.seed, "base seed");
  sel->add_option("--threads", f.threads, "worker threads");
  sel->add_option("--out", f.out, "output directory")->required();

  auto* clu = app.add_subcommand("cluster", "VSM (+ mask) -> cluster assignment");
  clu->add_option("--vsm", vsm_path, "VSM triplet CSV")->required();
  clu->add_option("--mask", mask_path, "mask file written by select");
  clu->add_option("--k", f.k, "cluster count")->required();
  clu->add_option("--kmeans-iters", f.kmeans_iter, "maximum K-means iterations");
  clu->add_option("--out", f.out, "output directory")->required();

  std::string assignment_path, labels_path, eval_out;
  auto* eva = app.add_subcommand("evaluate", "assignment + labels -> pair-counting metrics");
  eva->add_option("--assignment", assignment_path, "assignment CSV")->required();
  eva->add_option("--labels", labels_path, "labels CSV")->required();
  eva->add_option("--out", eval_out, "JSON output file (default: stdout)");

  auto* bench = app.add_subcommand("bench", "full seeded multi-run experiment");
  bench->add_option("--config", f.config, "JSON experiment config; flags override it");
  bench->add_option("--corpus", f.corpus, "corpus directory or CSV file");
  bench->add_option("--format", f.format, "dirs or csv")->check(CLI::IsMember({"dirs", "csv"}));
  bench->add_option("--algorithm", f.algorithm, "tlbo-gwo, tlbo, gwo, none, a comma list, or all");
  bench->add_option("--iters", f.iters, "iterations per document");
  bench->add_option("--pop", f.pop, "population size");
  bench->add_option("--pmax", f.pmax, "maximum mutation probability");
  bench->add_option("--k", f.k, "cluster count (default: number of labels)");
  bench->add_option("--kmeans-iters", f.kmeans_iter, "maximum K-means iterations");
  bench->add_option("--runs", f.runs, "independent runs");
  bench->add_option("--seed", f.seed, "base seed");
  bench->add_option("--stopwords", f.stopwords, "stop-word file replacing the bundled list");
  bench->add_option("--threads", f.threads, "worker threads");
  bench->add_option("--out", f.out, "output directory");

  std::vector<std::string> summaries;
  std::string proposed = "tlbo-gwo", compare_out = "comparison.csv";
  auto* cmp = app.add_subcommand("compare", "arm summaries -> significance table");
  cmp->add_option("--summary", summaries, "summary.json of an arm (repeatable)")->required();
  cmp->add_option("--proposed", proposed, "arm tested for superiority");
  cmp->add_option("--out", compare_out, "output CSV");

  std::string kind = "desk", synth_out;
  std::uint64_t synth_seed = 2024;
  auto* syn = app.add_subcommand("synth", "write a synthetic labeled corpus");
  syn->add_option("--kind", kind, "desk or disjoint");
  syn->add_option("--seed", synth_seed, "generator seed");
  syn->add_option("--out", synth_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pre) cmd_preprocess(f);
    else if (*sel) cmd_select(f, vsm_path, vocab_path);
    else if (*clu) cmd_cluster(f, vsm_path, mask_path);
    else if (*eva) cmd_evaluate(assignment_path, labels_path, eval_out);
    else if (*bench) cmd_bench(f, *bench);
    else if (*cmp) cmd_compare(summaries, proposed, compare_out);
    else if (*syn) cmd_synth(kind, synth_out, synth_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

#include "textfs/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "textfs/baselines.hpp"
#include "textfs/kmeans.hpp"

namespace textfs::harness {

namespace fs = std::filesystem;
using nlohmann::json;

Algorithm parse_algorithm(const std::string& name) {
  if (name == "tlbo-gwo") return Algorithm::TlboGwo;
  if (name == "tlbo") return Algorithm::Tlbo;
  if (name == "gwo") return Algorithm::Gwo;
  if (name == "none") return Algorithm::None;
  throw std::invalid_argument("unknown algorithm '" + name + "' (expected tlbo-gwo, tlbo, gwo, none or all)");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::TlboGwo: return "tlbo-gwo";
    case Algorithm::Tlbo: return "tlbo";
    case Algorithm::Gwo: return "gwo";
    case Algorithm::None: return "none";
  }
  return "?";
}

std::vector<Algorithm> parse_algorithms(const std::string& list) {
  if (list == "all") return {Algorithm::TlboGwo, Algorithm::Tlbo, Algorithm::Gwo, Algorithm::None};
  std::vector<Algorithm> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Algorithm a = parse_algorithm(item);
    for (Algorithm seen : out)
      if (seen == a) throw std::invalid_argument("algorithm listed twice: " + item);
    out.push_back(a);
  }
  if (out.empty()) throw std::invalid_argument("no algorithm given");
  return out;
}

ExperimentConfig ExperimentConfig::from_json(const json& j, ExperimentConfig c) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "corpus") c.corpus = value.get<std::string>();
    else if (key == "format") c.format = value.get<std::string>();
    else if (key == "dataset") c.dataset = value.get<std::string>();
    else if (key == "algorithm") c.algorithms = parse_algorithms(value.get<std::string>());
    else if (key == "algorithms") {
      c.algorithms.clear();
      for (const auto& a : value) c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    else if (key == "iter_max") c.iter_max = value.get<std::size_t>();
    else if (key == "pop") c.pop = value.get<std::size_t>();
    else if (key == "p_max") c.p_max = value.get<double>();
    else if (key == "k") c.k = value.get<std::size_t>();
    else if (key == "kmeans_max_iter") c.kmeans_max_iter = value.get<std::size_t>();
    else if (key == "runs") c.runs = value.get<std::size_t>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else if (key == "out") c.out = value.get<std::string>();
    else if (key == "stopwords") c.stopwords = value.get<std::string>();
    else if (key == "threads") c.threads = value.get<unsigned>();
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) { return from_json(j, ExperimentConfig{}); }

json ExperimentConfig::to_json() const {
  json algos = json::array();
  for (Algorithm a : algorithms) algos.push_back(algorithm_name(a));
  return json{{"corpus", corpus},       {"format", format},   {"dataset", dataset},
              {"algorithms", algos},    {"iter_max", iter_max}, {"pop", pop},
              {"p_max", p_max},         {"k", k},             {"kmeans_max_iter", kmeans_max_iter},
              {"runs", runs},           {"seed", seed},       {"stopwords", stopwords}};
}

void ExperimentConfig::validate() const {
  if (algorithms.empty()) throw std::invalid_argument("config: no algorithm");
  if (runs == 0) throw std::invalid_argument("config: runs must be >= 1");
  if (pop < 3) throw std::invalid_argument("config: pop must be >= 3");
  if (!(p_max > 0.0 && p_max <= 1.0)) throw std::invalid_argument("config: p_max must be in (0, 1]");
  (void)corpus::parse_format(format);
}

Dataset make_dataset(std::string name, std::vector<corpus::RawDocument> docs, const ExperimentConfig& config) {
  Dataset d;
  d.name = std::move(name);
  corpus::StopList custom;
  corpus::VsmOptions opts;
  if (!config.stopwords.empty()) {
    custom = corpus::load_stoplist(config.stopwords);
    opts.stoplist = &custom;
  }
  d.vsm = corpus::build_vsm(docs, opts);
  for (std::size_t i : d.vsm.empty_documents)
    std::cerr << "warning: document " << i << " is empty after preprocessing\n";
  std::set<std::string> distinct;
  for (const auto& doc : docs) {
    d.labels.push_back(doc.label);
    distinct.insert(doc.label);
  }
  d.k = config.k != 0 ? config.k : distinct.size();
  if (d.k < 2) throw std::invalid_argument("cluster count k must be >= 2 (corpus has " +
                                           std::to_string(distinct.size()) + " labels)");
  d.documents = std::move(docs);
  return d;
}

Dataset prepare_dataset(const ExperimentConfig& config) {
  if (config.corpus.empty()) throw std::invalid_argument("config: corpus path is required");
  auto docs = corpus::load_corpus(config.corpus, corpus::parse_format(config.format));
  std::string name = config.dataset;
  if (name.empty()) {
    fs::path p(config.corpus);
    if (!p.has_filename()) p = p.parent_path();
    name = p.stem().string();
  }
  return make_dataset(std::move(name), std::move(docs), config);
}

hybrid::DocumentOptimizer make_optimizer(Algorithm a, const ExperimentConfig& config) {
  switch (a) {
    case Algorithm::TlboGwo: {
      hybrid::HybridConfig hc{config.iter_max, config.pop, config.p_max, 0};
      return [hc](std::span<const double> w, RngStream& rng) {
        auto r = hybrid::run_document_fs(w, hc, rng);
        return opt::OptimizerResult{std::move(r.best_mask), r.best_fitness, std::move(r.trace)};
      };
    }
    case Algorithm::Tlbo: {
      baselines::TlboConfig tc{config.iter_max, config.pop, false};
      return [tc](std::span<const double> w, RngStream& rng) { return baselines::run_tlbo(w, tc, rng); };
    }
    case Algorithm::Gwo: {
      baselines::GwoConfig gc{config.iter_max, config.pop};
      return [gc](std::span<const double> w, RngStream& rng) { return baselines::run_gwo(w, gc, rng); };
    }
    case Algorithm::None:
      break;
  }
  return {};
}

RunReport run_once(const Dataset& data, const ExperimentConfig& config, Algorithm a, std::size_t run) {
  const auto start = std::chrono::steady_clock::now();
  RunReport rep;
  rep.run = run;
  rep.seed = derive_seed(config.seed, run);
  const auto& weights = data.vsm.weights;

  corpus::WeightMatrix reduced;
  if (a == Algorithm::None) {
    rep.global_mask = FeatureMask(weights.t(), true);
    reduced = weights;
  } else {
    auto sel = hybrid::run_corpus_fs(weights, make_optimizer(a, config),
                                     hybrid::CorpusRunOptions{rep.seed, {}, config.threads});
    rep.global_mask = std::move(sel.global_mask);
    rep.per_document = std::move(sel.per_document);
    if (rep.global_mask.none()) throw std::runtime_error("feature selection produced an empty global mask");
    reduced = corpus::reduce_vsm(weights, rep.global_mask);
  }
  rep.selected = rep.global_mask.popcount();

  const auto model = kmeans::run_kmeans(reduced, data.k, config.kmeans_max_iter);
  rep.assignment = model.assignment;
  rep.kmeans_iterations = model.iterations_run;
  const auto counts = metrics::pairwise_counts(model.assignment, data.labels);
  rep.metrics = metrics::evaluate(counts, metrics::reduction_ratio(weights.t(), rep.selected));
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

namespace {

using Getter = double metrics::MetricsReport::*;

const std::vector<std::pair<std::string, Getter>>& measures() {
  static const std::vector<std::pair<std::string, Getter>> m{
      {"accuracy", &metrics::MetricsReport::accuracy},
      {"precision", &metrics::MetricsReport::precision},
      {"recall", &metrics::MetricsReport::recall},
      {"f_measure", &metrics::MetricsReport::f_measure}};
  return m;
}

const std::vector<std::pair<std::string, Getter>>& all_fields() {
  static const std::vector<std::pair<std::string, Getter>> m = [] {
    auto v = measures();
    v.emplace_back("reduction_ratio", &metrics::MetricsReport::reduction_ratio);
    return v;
  }();
  return m;
}

json metrics_json(const metrics::MetricsReport& r) {
  json j = json::object();
  for (const auto& [name, field] : all_fields()) j[name] = r.*field;
  return j;
}

metrics::MetricsReport metrics_from_json(const json& j) {
  metrics::MetricsReport r;
  for (const auto& [name, field] : all_fields()) r.*field = j.at(name).get<double>();
  return r;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void check_written(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

Aggregate aggregate(const std::vector<RunReport>& runs) {
  Aggregate agg;
  if (runs.empty()) return agg;
  const auto n = static_cast<double>(runs.size());
  for (const auto& [name, field] : all_fields()) {
    double sum = 0.0;
    for (const auto& r : runs) sum += r.metrics.*field;
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& r : runs) ss += (r.metrics.*field - mean) * (r.metrics.*field - mean);
    agg.mean.*field = mean;
    agg.stddev.*field = runs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  }
  return agg;
}

ArmResult run_arm(const Dataset& data, const ExperimentConfig& config, Algorithm a, const RunCallback& on_run) {
  ArmResult arm;
  arm.algorithm = a;
  for (std::size_t r = 0; r < config.runs; ++r) {
    try {
      arm.runs.push_back(run_once(data, config, a, r));
    } catch (const std::exception& e) {
      throw std::runtime_error(algorithm_name(a) + " run " + std::to_string(r) + " failed: " + e.what());
    }
    if (on_run) on_run(arm.runs.back());
  }
  arm.aggregate = aggregate(arm.runs);
  return arm;
}

std::vector<ComparisonRow> compare_arms(const ArmSamples& arms, const std::string& dataset,
                                        const std::string& proposed, double alpha) {
  if (arms.size() < 2) throw std::invalid_argument("compare_arms: need at least 2 arms");
  const auto it = arms.find(proposed);
  if (it == arms.end()) throw std::invalid_argument("compare_arms: proposed arm '" + proposed + "' missing");
  for (const auto& [name, samples] : arms)
    if (samples.size() != it->second.size())
      throw std::invalid_argument("compare_arms: arm '" + name + "' has " + std::to_string(samples.size()) +
                                  " runs, expected " + std::to_string(it->second.size()));

  std::vector<ComparisonRow> rows;
  for (const auto& [measure, field] : measures()) {
    std::vector<double> a;
    for (const auto& m : it->second) a.push_back(m.*field);
    for (const auto& [name, samples] : arms) {
      if (name == proposed) continue;
      std::vector<double> b;
      for (const auto& m : samples) b.push_back(m.*field);
      for (const auto& result : {stats::t_test(a, b), stats::mann_whitney_u(a, b)})
        rows.push_back({dataset, measure, proposed, name, result.method, result.p_value, result.p_value < alpha});
    }
  }
  return rows;
}

json summary_json(const ArmResult& arm, const Dataset& data, const ExperimentConfig& config) {
  json runs = json::array();
  for (const auto& r : arm.runs) {
    json jr = metrics_json(r.metrics);
    jr["run"] = r.run;
    jr["seed"] = r.seed;
    jr["selected"] = r.selected;
    jr["kmeans_iterations"] = r.kmeans_iterations;
    runs.push_back(std::move(jr));
  }
  return json{{"dataset", data.name},
              {"algorithm", algorithm_name(arm.algorithm)},
              {"n", data.vsm.weights.n()},
              {"t", data.vsm.weights.t()},
              {"k", data.k},
              {"config", config.to_json()},
              {"runs", std::move(runs)},
              {"mean", metrics_json(arm.aggregate.mean)},
              {"std", metrics_json(arm.aggregate.stddev)}};
}

void write_text(const fs::path& path, const std::string& contents) {
  auto out = open_out(path);
  out << contents;
  check_written(out, path);
}

void write_trace_csv(const opt::Trace& trace, const fs::path& path) {
  auto out = open_out(path);
  out.precision(17);
  out << "iter,best,mean\n";
  for (std::size_t i = 0; i < trace.size(); ++i) out << i << ',' << trace[i].best << ',' << trace[i].mean << '\n';
  check_written(out, path);
}

void write_run_artifacts(const RunReport& run, const Dataset& data, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& doc : run.per_document) {
    if (doc.trace.empty()) continue;
    write_trace_csv(doc.trace, dir / ("convergence_" + std::to_string(run.run) + "_" + std::to_string(doc.doc_index) +
                                      ".csv"));
  }
  std::string terms;
  for (std::size_t j : run.global_mask.selected()) terms += data.vsm.vocabulary.terms[j] + '\n';
  write_text(dir / ("selected_terms_" + std::to_string(run.run) + ".txt"), terms);
}

void write_runs_csv(const std::vector<RunReport>& runs, const fs::path& path) {
  auto out = open_out(path);
  out.precision(17);
  out << "run,seed,accuracy,precision,recall,f_measure,reduction_ratio,selected,kmeans_iterations,wall_seconds\n";
  for (const auto& r : runs)
    out << r.run << ',' << r.seed << ',' << r.metrics.accuracy << ',' << r.metrics.precision << ','
        << r.metrics.recall << ',' << r.metrics.f_measure << ',' << r.metrics.reduction_ratio << ',' << r.selected
        << ',' << r.kmeans_iterations << ',' << r.wall_seconds << '\n';
  check_written(out, path);
}

void emit_reports(const ArmResult& arm, const Dataset& data, const ExperimentConfig& config, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& r : arm.runs) write_run_artifacts(r, data, dir);
  write_runs_csv(arm.runs, dir / "runs.csv");
  write_text(dir / "summary.json", summary_json(arm, data, config).dump(2) + "\n");
}

void write_comparison(const std::vector<ComparisonRow>& rows, const fs::path& path) {
  auto out = open_out(path);
  out.precision(17);
  out << "dataset,measure,arm_a,arm_b,method,p_value,significant@0.05\n";
  for (const auto& r : rows)
    out << r.dataset << ',' << r.measure << ',' << r.arm_a << ',' << r.arm_b << ',' << stats::method_name(r.method)
        << ',' << r.p_value << ',' << (r.significant ? "true" : "false") << '\n';
  check_written(out, path);
}

ArmSummary read_summary(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  json j;
  try {
    in >> j;
    ArmSummary s;
    s.dataset = j.at("dataset").get<std::string>();
    s.algorithm = j.at("algorithm").get<std::string>();
    for (const auto& r : j.at("runs")) s.runs.push_back(metrics_from_json(r));
    return s;
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  return run_experiment(config, prepare_dataset(config));
}

ExperimentResult run_experiment(const ExperimentConfig& config, Dataset data) {
  config.validate();
  ExperimentResult result;
  result.dataset = std::move(data);
  const bool write = !config.out.empty();
  const bool several = config.algorithms.size() > 1;

  for (Algorithm a : config.algorithms) {
    const fs::path dir = several ? fs::path(config.out) / algorithm_name(a) : fs::path(config.out);
    std::vector<RunReport> done;
    RunCallback on_run;
    if (write)
      on_run = [&](const RunReport& r) {
        write_run_artifacts(r, result.dataset, dir);
        done.push_back(r);
      };
    try {
      result.arms.push_back(run_arm(result.dataset, config, a, on_run));
    } catch (...) {
      if (write && !done.empty()) write_runs_csv(done, dir / "runs.csv");
      throw;
    }
    if (write) {
      // Per-run artifacts were written as each run finished.
      write_runs_csv(result.arms.back().runs, dir / "runs.csv");
      write_text(dir / "summary.json", summary_json(result.arms.back(), result.dataset, config).dump(2) + "\n");
    }
  }

  const bool has_proposed = std::any_of(config.algorithms.begin(), config.algorithms.end(),
                                        [](Algorithm a) { return a == Algorithm::TlboGwo; });
  if (several && has_proposed) {
    ArmSamples samples;
    for (const auto& arm : result.arms) {
      auto& v = samples[algorithm_name(arm.algorithm)];
      for (const auto& r : arm.runs) v.push_back(r.metrics);
    }
    result.comparison = compare_arms(samples, result.dataset.name);
    if (write) write_comparison(result.comparison, fs::path(config.out) / "comparison.csv");
  }
  return result;
}

}  // namespace textfs::harness

#include "linkpred/experiment.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "linkpred/evaluation.hpp"
#include "linkpred/format.hpp"
#include "linkpred/predictor.hpp"

namespace linkpred {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t fraction_bits(double f) { return std::bit_cast<std::uint64_t>(f); }

// Seed streams under a trial seed. Network and removal streams never depend
// on the detector or method.
enum Stream : std::uint64_t { kNetwork = 0, kRemoval = 1, kDetector = 2, kSampling = 3 };

struct Instance {
  Graph graph;
  std::optional<Cover> truth;
};

Instance load_file_source(const NetworkSource& source) {
  auto lg = read_edge_list_file(source.edge_list);
  Instance inst{std::move(lg.graph), std::nullopt};
  if (!source.cover_file.empty()) inst.truth = load_cover_file(source.cover_file, lg.labels);
  return inst;
}

Instance materialize(const NetworkSource& source, std::uint64_t seed, const Instance* cached) {
  if (source.lfr) {
    LfrParams p = *source.lfr;
    p.seed = derive_seed(seed, {kNetwork});
    auto net = generate_lfr(p);
    return {std::move(net.graph), std::move(net.ground_truth)};
  }
  if (cached) return *cached;
  return load_file_source(source);
}

Cover detect(const Graph& observed, DetectorChoice choice, const std::optional<Cover>& truth,
             std::uint64_t seed, const EvaluationOptions& options) {
  switch (choice) {
    case DetectorChoice::LabelPropagation:
      return detect_label_propagation(observed, seed, options.max_sweeps);
    case DetectorChoice::GreedyModularity:
      return detect_greedy_modularity(observed);
    case DetectorChoice::Loaded:
      if (!truth) throw ParameterError("the loaded detector needs ground truth or a community file");
      return *truth;
  }
  throw ParameterError("invalid detector");
}

std::optional<double> evaluate(const Observation& obs, const Cover* cover, SimilarityMethod method,
                               const EvaluationOptions& options, std::uint64_t seed) {
  const Graph& g = obs.observed;
  const std::size_t n = g.vertex_count();
  const std::size_t candidates = n * (n - (n > 0)) / 2 - g.edge_count();
  const std::size_t positives = obs.removed.size();
  if (positives == 0 || positives == candidates) return std::nullopt;

  Rng rng(seed);
  if (candidates > options.sample_threshold)
    return auc_sampled_direct(g, cover, method, obs.removed, options.samples, rng).auc;
  const auto preds = cover ? rank_community_aware(g, *cover, method) : rank_baseline(g, method);
  const auto lr = label_ranking(preds, obs.removed);
  if (options.mode == AucMode::Sampled) return auc_sampled(lr, options.samples, rng).auc;
  return auc_exact(lr).auc;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::size_t parse_count(const std::string& s) {
  std::size_t x = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size())
    throw ParameterError("not a non-negative integer: '" + s + "'");
  return x;
}

std::string descriptor_source_lfr(const LfrParams& p) {
  std::ostringstream os;
  os << "lfr_n" << p.n << "_k" << format_real(p.k_avg) << "_kmax" << p.k_max << "_t1" << format_real(p.tau1)
     << "_t2" << format_real(p.tau2) << "_c" << p.c_min << "-" << p.c_max << "_mu" << format_real(p.mu)
     << "_on" << p.o_n << "_om" << p.o_m;
  return os.str();
}

}  // namespace

std::string NetworkSource::describe() const {
  if (lfr) return descriptor_source_lfr(*lfr);
  return std::filesystem::path(edge_list).stem().string();
}

std::string method_descriptor(const DetectorSlot& detector, SimilarityMethod method) {
  if (!detector) return std::string(method_name(method));
  return std::string(detector_name(*detector)) + "+" + std::string(method_name(method));
}

void ExperimentConfig::validate() const {
  if (source.lfr) {
    source.lfr->validate();
  } else if (source.edge_list.empty()) {
    throw ParameterError("config: no network source (set source=lfr or edges=<path>)");
  }
  if (detectors.empty()) throw ParameterError("config: no detectors");
  for (const auto& d : detectors)
    if (d == DetectorChoice::Loaded && !source.lfr && source.cover_file.empty())
      throw ParameterError("config: the loaded detector needs a cover file for file sources");
  if (methods.empty()) throw ParameterError("config: no methods");
  if (removal_fractions.empty()) throw ParameterError("config: no removal fractions");
  for (double f : removal_fractions)
    if (!(f > 0.0 && f < 1.0)) throw ParameterError("config: removal fractions must lie strictly in (0,1)");
  if (trials < 1) throw ParameterError("config: trials must be >= 1");
  if (evaluation.samples < 1) throw ParameterError("config: auc_samples must be >= 1");
  if (evaluation.max_sweeps < 1) throw ParameterError("config: max_sweeps must be >= 1");
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  LfrParams lfr;
  std::string source_kind;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParameterError("config line " + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "source") source_kind = value;
    else if (key == "edges") cfg.source.edge_list = value;
    else if (key == "cover") cfg.source.cover_file = value;
    else if (key == "n") lfr.n = parse_count(value);
    else if (key == "k_avg") lfr.k_avg = parse_real(value);
    else if (key == "k_max") lfr.k_max = parse_count(value);
    else if (key == "tau1") lfr.tau1 = parse_real(value);
    else if (key == "tau2") lfr.tau2 = parse_real(value);
    else if (key == "c_min") lfr.c_min = parse_count(value);
    else if (key == "c_max") lfr.c_max = parse_count(value);
    else if (key == "mu") lfr.mu = parse_real(value);
    else if (key == "o_n") lfr.o_n = parse_count(value);
    else if (key == "o_m") lfr.o_m = parse_count(value);
    else if (key == "detectors") {
      cfg.detectors.clear();
      for (const auto& d : split_list(value))
        cfg.detectors.push_back(d == "none" ? DetectorSlot{} : DetectorSlot{parse_detector(d)});
    } else if (key == "methods") {
      cfg.methods.clear();
      for (const auto& m : split_list(value)) cfg.methods.push_back(parse_method(m));
    } else if (key == "removal_fractions") {
      cfg.removal_fractions.clear();
      for (const auto& f : split_list(value)) cfg.removal_fractions.push_back(parse_real(f));
    } else if (key == "trials") cfg.trials = parse_count(value);
    else if (key == "seed") cfg.master_seed = parse_count(value);
    else if (key == "auc_mode") {
      if (value == "exact") cfg.evaluation.mode = AucMode::Exact;
      else if (value == "sampled") cfg.evaluation.mode = AucMode::Sampled;
      else throw ParameterError("config: auc_mode must be exact or sampled");
    } else if (key == "auc_samples") cfg.evaluation.samples = parse_count(value);
    else if (key == "sample_threshold") cfg.evaluation.sample_threshold = parse_count(value);
    else if (key == "max_sweeps") cfg.evaluation.max_sweeps = parse_count(value);
    else throw ParameterError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  if (source_kind == "lfr" || (source_kind.empty() && cfg.source.edge_list.empty())) {
    cfg.source.lfr = lfr;
  } else if (source_kind != "file" && !source_kind.empty()) {
    throw ParameterError("config: source must be lfr or file");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config '" + path + "'");
  return parse_config(in);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial) {
  return derive_seed(master_seed, {trial});
}

TrialOutcome run_trial(const NetworkSource& source, const DetectorSlot& detector, SimilarityMethod method,
                       double removal_fraction, std::uint64_t seed, const EvaluationOptions& options) {
  const Instance inst = materialize(source, seed, nullptr);
  const auto fb = fraction_bits(removal_fraction);
  const Observation obs = remove_random_edges(inst.graph, removal_fraction, derive_seed(seed, {kRemoval, fb}));

  TrialOutcome out;
  const auto t0 = Clock::now();
  std::optional<Cover> cover;
  if (detector) cover = detect(obs.observed, *detector, inst.truth, derive_seed(seed, {kDetector, fb}), options);
  out.auc = evaluate(obs, cover ? &*cover : nullptr, method, options, derive_seed(seed, {kSampling, fb}));
  out.seconds = seconds_since(t0);
  if (!out.auc) out.note = "undefined AUC (no positives or no negatives)";
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto& fractions = config.removal_fractions;
  const auto& detectors = config.detectors;
  const auto& methods = config.methods;
  const std::string source_name = config.source.describe();

  ExperimentResult result;
  for (double f : fractions)
    for (const auto& d : detectors)
      for (auto m : methods) {
        ResultRow row;
        row.source = source_name;
        row.detector = d;
        row.method = m;
        row.removal_fraction = f;
        row.trials = config.trials;
        result.rows.push_back(std::move(row));
      }
  auto row_at = [&](std::size_t fi, std::size_t di, std::size_t mi) -> ResultRow& {
    return result.rows[(fi * detectors.size() + di) * methods.size() + mi];
  };
  std::vector<double> seconds(result.rows.size(), 0.0);

  std::optional<Instance> file_instance;
  if (!config.source.lfr) file_instance = load_file_source(config.source);

  for (std::size_t t = 0; t < config.trials; ++t) {
    const std::uint64_t seed = trial_seed(config.master_seed, t);
    Instance inst;
    try {
      inst = materialize(config.source, seed, file_instance ? &*file_instance : nullptr);
    } catch (const std::exception& e) {
      for (auto& row : result.rows) row.notes += "trial " + std::to_string(t) + ": " + e.what() + "; ";
      continue;
    }
    for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
      const auto fb = fraction_bits(fractions[fi]);
      const Observation obs =
          remove_random_edges(inst.graph, fractions[fi], derive_seed(seed, {kRemoval, fb}));
      for (std::size_t di = 0; di < detectors.size(); ++di) {
        const auto t0 = Clock::now();
        std::optional<Cover> cover;
        std::string failure;
        try {
          if (detectors[di])
            cover = detect(obs.observed, *detectors[di], inst.truth, derive_seed(seed, {kDetector, fb}),
                           config.evaluation);
        } catch (const std::exception& e) {
          failure = e.what();
        }
        const double detect_seconds = seconds_since(t0);
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
          ResultRow& row = row_at(fi, di, mi);
          if (!failure.empty()) {
            row.notes += "trial " + std::to_string(t) + ": " + failure + "; ";
            continue;
          }
          const auto t1 = Clock::now();
          try {
            auto auc = evaluate(obs, cover ? &*cover : nullptr, methods[mi], config.evaluation,
                                derive_seed(seed, {kSampling, fb}));
            if (auc) {
              row.trial_aucs.push_back(*auc);
              seconds[&row - result.rows.data()] += detect_seconds + seconds_since(t1);
            } else {
              row.notes += "trial " + std::to_string(t) + ": undefined AUC; ";
            }
          } catch (const std::exception& e) {
            row.notes += "trial " + std::to_string(t) + ": " + e.what() + "; ";
          }
        }
      }
    }
  }

  for (std::size_t r = 0; r < result.rows.size(); ++r) {
    auto& row = result.rows[r];
    const auto& a = row.trial_aucs;
    if (a.empty()) continue;
    double sum = 0.0;
    for (double x : a) sum += x;
    row.mean_auc = sum / double(a.size());
    double ss = 0.0;
    for (double x : a) ss += (x - row.mean_auc) * (x - row.mean_auc);
    row.std_auc = a.size() > 1 ? std::sqrt(ss / double(a.size() - 1)) : 0.0;
    row.mean_seconds = seconds[r] / double(a.size());
  }
  return result;
}

void write_result_csv(std::ostream& out, const ExperimentResult& result, bool include_timing) {
  out << "source,detector,method,removal_fraction,observed_fraction,mean_auc,std_auc,trials,completed";
  if (include_timing) out << ",mean_seconds";
  out << '\n';
  for (const auto& row : result.rows) {
    const bool any = !row.trial_aucs.empty();
    out << row.source << ',' << (row.detector ? detector_name(*row.detector) : "none") << ','
        << method_descriptor(row.detector, row.method) << ',' << format_real(row.removal_fraction) << ','
        << format_real(1.0 - row.removal_fraction) << ',' << (any ? format_real(row.mean_auc) : "") << ','
        << (any ? format_real(row.std_auc) : "") << ',' << row.trials << ',' << row.trial_aucs.size();
    if (include_timing) out << ',' << (any ? format_real(row.mean_seconds) : "");
    out << '\n';
  }
}

void write_trials_csv(std::ostream& out, const ExperimentResult& result) {
  out << "source,method,removal_fraction,index,auc\n";
  for (const auto& row : result.rows)
    for (std::size_t i = 0; i < row.trial_aucs.size(); ++i)
      out << row.source << ',' << method_descriptor(row.detector, row.method) << ','
          << format_real(row.removal_fraction) << ',' << i << ',' << format_real(row.trial_aucs[i]) << '\n';
}

std::vector<TimingRow> timing_sweep(const LfrParams& base, const std::vector<std::size_t>& sizes,
                                    SimilarityMethod method, const DetectorSlot& detector,
                                    std::uint64_t seed, const EvaluationOptions& options) {
  if (!std::is_sorted(sizes.begin(), sizes.end())) throw ParameterError("timing sizes must be ascending");
  std::vector<TimingRow> rows;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    NetworkSource src;
    src.lfr = base;
    src.lfr->n = sizes[i];
    const auto outcome = run_trial(src, detector, method, 0.2, derive_seed(seed, {sizes[i]}), options);
    rows.push_back({sizes[i], outcome.seconds, outcome.auc});
  }
  return rows;
}

void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows) {
  out << "n,seconds,auc\n";
  for (const auto& r : rows)
    out << r.n << ',' << format_real(r.seconds) << ',' << (r.auc ? format_real(*r.auc) : "") << '\n';
}

std::vector<StatsRow> stats_report(const std::vector<std::string>& paths) {
  std::vector<StatsRow> rows;
  for (const auto& p : paths) {
    StatsRow row;
    row.name = std::filesystem::path(p).stem().string();
    try {
      const auto lg = read_edge_list_file(p);
      row.vertices = lg.graph.vertex_count();
      row.edges = lg.graph.edge_count();
      row.clustering = clustering_coefficient(lg.graph);
      row.average_degree = average_degree(lg.graph);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows) {
  out << "name,vertices,edges,clustering_coefficient,average_degree,error\n";
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      std::string msg = r.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      out << r.name << ",,,,," << msg << '\n';
      continue;
    }
    out << r.name << ',' << r.vertices << ',' << r.edges << ',' << format_real(r.clustering) << ','
        << format_real(r.average_degree) << ",\n";
  }
}

}  // namespace linkpred

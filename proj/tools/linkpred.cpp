// Command-line front end: generate, predict, evaluate, experiment, stats, timing.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "linkpred/community.hpp"
#include "linkpred/evaluation.hpp"
#include "linkpred/experiment.hpp"
#include "linkpred/format.hpp"
#include "linkpred/lfr.hpp"
#include "linkpred/predictor.hpp"

using namespace linkpred;

namespace {

void add_lfr_options(CLI::App* app, LfrParams& p) {
  app->add_option("--n", p.n, "vertex count")->capture_default_str();
  app->add_option("--k-avg", p.k_avg, "average degree")->capture_default_str();
  app->add_option("--k-max", p.k_max, "maximum degree")->capture_default_str();
  app->add_option("--tau1", p.tau1, "degree exponent")->capture_default_str();
  app->add_option("--tau2", p.tau2, "community size exponent")->capture_default_str();
  app->add_option("--c-min", p.c_min, "minimum community size")->capture_default_str();
  app->add_option("--c-max", p.c_max, "maximum community size")->capture_default_str();
  app->add_option("--mu", p.mu, "mixing parameter")->capture_default_str();
  app->add_option("--on", p.o_n, "overlapping vertices")->capture_default_str();
  app->add_option("--om", p.o_m, "memberships per overlapping vertex")->capture_default_str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write '" + path + "'");
  return out;
}

// Output stream: file if a path was given, stdout otherwise.
struct Sink {
  std::ofstream file;
  std::ostream& get(const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file = open_out(path);
    return file;
  }
};

DetectorSlot parse_slot(const std::string& name) {
  if (name.empty() || name == "none") return std::nullopt;
  return parse_detector(name);
}

Cover cover_for(const LabeledGraph& lg, const std::string& cover_path, const DetectorSlot& detector,
                std::uint64_t seed) {
  if (!cover_path.empty()) return load_cover_file(cover_path, lg.labels);
  if (!detector) throw ParameterError("no cover");
  switch (*detector) {
    case DetectorChoice::LabelPropagation: return detect_label_propagation(lg.graph, seed);
    case DetectorChoice::GreedyModularity: return detect_greedy_modularity(lg.graph);
    case DetectorChoice::Loaded: break;
  }
  throw ParameterError("detector 'loaded' needs --cover");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community-aware missing-link prediction"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "master seed for all randomness")->capture_default_str();

  // generate
  LfrParams gen;
  std::string gen_prefix = "lfr";
  auto* generate = app.add_subcommand("generate", "generate an LFR benchmark network");
  add_lfr_options(generate, gen);
  generate->add_option("--out", gen_prefix, "output prefix (.edges, .communities, .meta.jsonl)")->capture_default_str();

  // predict
  std::string edges_path, cover_path, method_str = "aa", detector_str = "none", out_path;
  std::size_t top = 0;
  auto* predict = app.add_subcommand("predict", "rank candidate links of an edge list");
  predict->add_option("--edges", edges_path, "edge list")->required();
  predict->add_option("--cover", cover_path, "community file");
  predict->add_option("--detector", detector_str, "none, label_propagation, greedy_modularity");
  predict->add_option("--method", method_str, "cn, jaccard, aa, ra, pa")->capture_default_str();
  predict->add_option("--top", top, "keep only the first k rows (0 = all)");
  predict->add_option("--out", out_path, "CSV output (default stdout)");

  // evaluate
  double fraction = 0.1;
  std::string roc_path;
  EvaluationOptions eval_opts;
  auto* evaluate = app.add_subcommand("evaluate", "remove edges, predict, and report AUC");
  evaluate->add_option("--edges", edges_path, "edge list")->required();
  evaluate->add_option("--cover", cover_path, "community file (detector 'loaded')");
  evaluate->add_option("--detector", detector_str, "none, label_propagation, greedy_modularity, loaded");
  evaluate->add_option("--method", method_str, "cn, jaccard, aa, ra, pa")->capture_default_str();
  evaluate->add_option("--fraction", fraction, "fraction of edges removed")->capture_default_str();
  evaluate->add_option("--roc", roc_path, "write ROC points to this CSV");

  // experiment
  std::string config_path, trials_path;
  bool no_timing = false;
  auto* experiment = app.add_subcommand("experiment", "run a configured experiment grid");
  experiment->add_option("--config", config_path, "key=value config file")->required();
  experiment->add_option("--out", out_path, "result CSV (default stdout)");
  experiment->add_option("--trials-out", trials_path, "per-trial AUC CSV");
  experiment->add_flag("--no-timing", no_timing, "omit the wall-time column");

  // stats
  std::vector<std::string> stat_paths;
  auto* stats = app.add_subcommand("stats", "vertex/edge counts, clustering, average degree");
  stats->add_option("files", stat_paths, "edge lists");

  // timing
  LfrParams tim;
  tim.c_min = 20;
  tim.c_max = 40;
  std::vector<std::size_t> sizes{100, 500, 1000, 1500, 2000, 2500, 3000};
  auto* timing = app.add_subcommand("timing", "time one trial per network size");
  add_lfr_options(timing, tim);
  timing->add_option("--sizes", sizes, "ascending network sizes")->delimiter(',');
  timing->add_option("--method", method_str, "similarity method")->capture_default_str();
  timing->add_option("--detector", detector_str, "detector or none");
  timing->add_option("--out", out_path, "CSV output (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    Sink sink;
    if (*generate) {
      gen.seed = seed;
      auto net = generate_lfr(gen);
      const auto labels = LabelMap::identity(gen.n);
      auto e = open_out(gen_prefix + ".edges");
      write_edge_list(e, net.graph, labels);
      auto c = open_out(gen_prefix + ".communities");
      write_cover(c, net.ground_truth, labels);
      nlohmann::json meta = {
          {"n", gen.n}, {"k_avg", gen.k_avg}, {"k_max", gen.k_max}, {"tau1", gen.tau1},
          {"tau2", gen.tau2}, {"c_min", gen.c_min}, {"c_max", gen.c_max}, {"mu", gen.mu},
          {"o_n", gen.o_n}, {"o_m", gen.o_m}, {"seed", seed}, {"attempt_seed", net.attempt_seed},
          {"achieved_mu", net.achieved_mu}, {"edges", net.graph.edge_count()},
          {"communities", net.ground_truth.community_count()}, {"discarded_stubs", net.discarded_stubs}};
      auto m = open_out(gen_prefix + ".meta.jsonl");
      m << meta.dump() << '\n';
      std::cerr << "wrote " << gen_prefix << ".{edges,communities,meta.jsonl}: m=" << net.graph.edge_count()
                << " achieved_mu=" << format_real(net.achieved_mu) << '\n';
    } else if (*predict) {
      const auto lg = read_edge_list_file(edges_path);
      const auto method = parse_method(method_str);
      const auto detector = parse_slot(detector_str);
      RankedPredictions preds;
      if (!cover_path.empty() || detector)
        preds = rank_community_aware(lg.graph, cover_for(lg, cover_path, detector, seed), method);
      else
        preds = rank_baseline(lg.graph, method);
      const auto rows = top == 0 ? preds.pairs : top_k(preds, top);
      write_predictions_csv(sink.get(out_path), rows, lg.labels);
    } else if (*evaluate) {
      const auto lg = read_edge_list_file(edges_path);
      const auto method = parse_method(method_str);
      const auto detector = parse_slot(detector_str);
      const auto obs = remove_random_edges(lg.graph, fraction, derive_seed(seed, {1}));
      std::optional<Cover> cover;
      if (!cover_path.empty() || detector) {
        LabeledGraph observed{obs.observed, lg.labels};
        cover = cover_for(observed, cover_path, detector, derive_seed(seed, {2}));
      }
      const auto preds = cover ? rank_community_aware(obs.observed, *cover, method)
                               : rank_baseline(obs.observed, method);
      const auto lr = label_ranking(preds, obs.removed);
      const auto auc = auc_exact(lr);
      const DetectorSlot shown = detector ? detector : (cover ? DetectorSlot{DetectorChoice::Loaded} : DetectorSlot{});
      std::cout << "method,removal_fraction,positives,negatives,auc\n"
                << method_descriptor(shown, method)
                << ',' << format_real(fraction) << ',' << auc.positives << ',' << auc.negatives << ','
                << format_real(auc.auc) << '\n';
      if (!roc_path.empty()) {
        auto r = open_out(roc_path);
        write_roc_csv(r, roc_points(lr));
      }
    } else if (*experiment) {
      auto cfg = load_config_file(config_path);
      if (app.count("--seed")) cfg.master_seed = seed;
      const auto result = run_experiment(cfg);
      write_result_csv(sink.get(out_path), result, !no_timing);
      if (!trials_path.empty()) {
        auto t = open_out(trials_path);
        write_trials_csv(t, result);
      }
      for (const auto& row : result.rows)
        if (!row.notes.empty())
          std::cerr << method_descriptor(row.detector, row.method) << " @" << format_real(row.removal_fraction)
                    << ": " << row.notes << '\n';
    } else if (*stats) {
      write_stats_csv(std::cout, stats_report(stat_paths));
    } else if (*timing) {
      const auto rows = timing_sweep(tim, sizes, parse_method(method_str), parse_slot(detector_str), seed);
      write_timing_csv(sink.get(out_path), rows);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "linkpred/community.hpp"
#include "linkpred/lfr.hpp"
#include "linkpred/similarity.hpp"

namespace linkpred {

/// Where original networks come from: a fresh LFR instance per trial, or a
/// fixed edge list (with an optional community file for the loaded detector).
struct NetworkSource {
  std::optional<LfrParams> lfr;
  std::string edge_list;
  std::string cover_file;

  std::string describe() const;
};

enum class AucMode { Exact, Sampled };

struct EvaluationOptions {
  AucMode mode = AucMode::Exact;
  std::size_t samples = 1'000'000;
  /// Above this many candidate pairs, AUC is estimated without ranking.
  std::size_t sample_threshold = 10'000'000;
  std::size_t max_sweeps = 100;  // label propagation
};

/// A detector, or std::nullopt for the plain similarity baseline.
using DetectorSlot = std::optional<DetectorChoice>;

std::string method_descriptor(const DetectorSlot& detector, SimilarityMethod method);

struct ExperimentConfig {
  NetworkSource source;
  std::vector<DetectorSlot> detectors{std::nullopt};
  std::vector<SimilarityMethod> methods{SimilarityMethod::AA};
  std::vector<double> removal_fractions{0.1};
  std::size_t trials = 1;
  std::uint64_t master_seed = 1;
  EvaluationOptions evaluation;

  void validate() const;
};

/// Reads flat "key = value" text; '#' starts a comment. Lists are
/// comma-separated. See README for the key list.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config_file(const std::string& path);

struct TrialOutcome {
  std::optional<double> auc;  // empty when the AUC is undefined
  double seconds = 0.0;       // detection + ranking + evaluation
  std::string note;
};

/// One trial: materialise the original network for `trial_seed`, remove the
/// fraction of edges, detect on the observed graph (unless baseline), rank,
/// and evaluate.
TrialOutcome run_trial(const NetworkSource& source, const DetectorSlot& detector, SimilarityMethod method,
                       double removal_fraction, std::uint64_t trial_seed,
                       const EvaluationOptions& options = {});

struct ResultRow {
  std::string source;
  DetectorSlot detector;
  SimilarityMethod method = SimilarityMethod::AA;
  double removal_fraction = 0.0;
  std::vector<double> trial_aucs;  // completed trials, in trial order
  std::size_t trials = 0;          // attempted
  double mean_auc = 0.0;
  double std_auc = 0.0;
  double mean_seconds = 0.0;
  std::string notes;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
};

/// Seed of trial t: derive_seed(master_seed, {t}). Removed edge sets depend
/// only on that seed, the source and the fraction, so detector and method
/// comparisons are paired.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial);

/// Full cross product detectors x methods x fractions, each over all trials.
/// Rows come out in config order: fraction, then detector, then method.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Aggregated CSV. include_timing=false drops the wall-time column.
void write_result_csv(std::ostream& out, const ExperimentResult& result, bool include_timing = true);

/// One line per completed trial AUC.
void write_trials_csv(std::ostream& out, const ExperimentResult& result);

struct TimingRow {
  std::size_t n = 0;
  double seconds = 0.0;
  std::optional<double> auc;
};

/// One timed trial per network size at removal fraction 0.2.
std::vector<TimingRow> timing_sweep(const LfrParams& base, const std::vector<std::size_t>& sizes,
                                    SimilarityMethod method, const DetectorSlot& detector,
                                    std::uint64_t seed, const EvaluationOptions& options = {});

void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows);

struct StatsRow {
  std::string name;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  double clustering = 0.0;
  double average_degree = 0.0;
  std::string error;  // non-empty when the file could not be read
};

std::vector<StatsRow> stats_report(const std::vector<std::string>& paths);

void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows);

}  // namespace linkpred

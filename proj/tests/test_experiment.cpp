#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "linkpred/experiment.hpp"
#include "linkpred/graph.hpp"
#include "linkpred/rng.hpp"

using namespace linkpred;

namespace {

ExperimentConfig small_config() {
  std::istringstream in(
      "# small disjoint network\n"
      "source = lfr\n"
      "n = 200\n"
      "k_avg = 10\n"
      "k_max = 15\n"
      "c_min = 20\n"
      "c_max = 40\n"
      "mu = 0.1\n"
      "detectors = none, label_propagation\n"
      "methods = aa, pa\n"
      "removal_fractions = 0.1, 0.2, 0.3\n"
      "trials = 5\n"
      "seed = 9\n");
  return parse_config(in);
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("linkpred_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("config parsing") {
  auto cfg = small_config();
  REQUIRE(cfg.source.lfr);
  CHECK(cfg.source.lfr->n == 200);
  CHECK(cfg.detectors.size() == 2);
  CHECK_FALSE(cfg.detectors[0]);
  CHECK(*cfg.detectors[1] == DetectorChoice::LabelPropagation);
  CHECK(cfg.methods == std::vector{SimilarityMethod::AA, SimilarityMethod::PA});
  CHECK(cfg.removal_fractions == std::vector{0.1, 0.2, 0.3});
  CHECK(cfg.trials == 5);
  CHECK(cfg.master_seed == 9);

  auto bad = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_config(in), ParameterError);
  };
  bad("bogus = 1\n");
  bad("just words\n");
  bad("removal_fractions = 1.0\n");
  bad("removal_fractions = 0\n");
  bad("trials = 0\n");
  bad("methods = katz\n");
  bad("detectors = louvain\n");
  bad("auc_mode = fuzzy\n");
  bad("source = ftp\n");
  bad("source = file\n");
  bad("source = file\nedges = x.edges\ndetectors = loaded\n");
  std::istringstream lfr_truth("detectors = loaded\n");
  CHECK_NOTHROW(parse_config(lfr_truth));
}

TEST_CASE("experiment shape and aggregation") {
  auto cfg = small_config();
  cfg.detectors = {std::nullopt};
  auto result = run_experiment(cfg);
  REQUIRE(result.rows.size() == 6);
  const double fr[] = {0.1, 0.2, 0.3};
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& row = result.rows[i];
    CHECK(row.removal_fraction == fr[i / 2]);
    CHECK(row.method == (i % 2 ? SimilarityMethod::PA : SimilarityMethod::AA));
    CHECK(row.trials == 5);
    REQUIRE(row.trial_aucs.size() == 5);
    double sum = 0;
    for (double a : row.trial_aucs) sum += a;
    CHECK(row.mean_auc == doctest::Approx(sum / 5).epsilon(1e-12));
    CHECK(row.std_auc > 0.0);
  }

  // each trial AUC is reproducible on its own
  for (std::size_t t = 0; t < 5; ++t) {
    auto one = run_trial(cfg.source, std::nullopt, SimilarityMethod::AA, 0.2, trial_seed(cfg.master_seed, t));
    REQUIRE(one.auc);
    CHECK(*one.auc == result.rows[2].trial_aucs[t]);
  }

  cfg.trials = 1;
  for (const auto& row : run_experiment(cfg).rows) CHECK(row.std_auc == 0.0);
}

TEST_CASE("experiment output is reproducible") {
  auto cfg = small_config();
  cfg.trials = 2;
  std::ostringstream a, b;
  write_result_csv(a, run_experiment(cfg), false);
  write_result_csv(b, run_experiment(cfg), false);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("source,detector,method,removal_fraction,observed_fraction,mean_auc,std_auc,trials,completed\n", 0) == 0);

  std::ostringstream c;
  cfg.master_seed = 10;
  write_result_csv(c, run_experiment(cfg), false);
  CHECK(a.str() != c.str());
}

TEST_CASE("detectors and methods see the same removed edges") {
  // With a single-community loaded cover every method's community-aware AUC
  // equals its baseline AUC only if both saw the same observed graph.
  const std::string edges = temp_file("ring.edges", [] {
    std::string s;
    for (int i = 0; i < 30; ++i) {
      s += std::to_string(i) + " " + std::to_string((i + 1) % 30) + "\n";
      s += std::to_string(i) + " " + std::to_string((i + 2) % 30) + "\n";
    }
    return s;
  }());
  std::string all;
  for (int i = 0; i < 30; ++i) all += std::to_string(i) + " ";
  const std::string cover = temp_file("ring.communities", all + "\n");

  std::istringstream in("source = file\nedges = " + edges + "\ncover = " + cover +
                        "\ndetectors = none, loaded\nmethods = cn, ra\nremoval_fractions = 0.2\ntrials = 4\n");
  auto result = run_experiment(parse_config(in));
  REQUIRE(result.rows.size() == 4);
  CHECK(result.rows[0].trial_aucs == result.rows[2].trial_aucs);
  CHECK(result.rows[1].trial_aucs == result.rows[3].trial_aucs);
}

TEST_CASE("rows with nothing to remove are reported, not fatal") {
  const std::string edges = temp_file("tiny.edges", "a b\nb c\n");
  std::istringstream in("source = file\nedges = " + edges + "\nremoval_fractions = 0.1\ntrials = 3\n");
  auto result = run_experiment(parse_config(in));
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].trial_aucs.empty());
  CHECK_FALSE(result.rows[0].notes.empty());
  std::ostringstream out;
  write_result_csv(out, result, false);
  CHECK(out.str().find(",,,3,0\n") != std::string::npos);
}

TEST_CASE("stats and timing") {
  const std::string tri = temp_file("triangle.edges", "1 2\n2 3\n1 3\n");
  const std::string empty = temp_file("empty.edges", "");
  auto rows = stats_report({tri, empty, "/nonexistent/nothing.edges"});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].name == "linkpred_test_triangle");
  CHECK(rows[0].vertices == 3);
  CHECK(rows[0].edges == 3);
  CHECK(rows[0].clustering == 1.0);
  CHECK(rows[0].average_degree == 2.0);
  CHECK_FALSE(rows[1].error.empty());
  CHECK_FALSE(rows[2].error.empty());
  CHECK(stats_report({}).empty());

  std::ostringstream csv;
  write_stats_csv(csv, {rows[0]});
  CHECK(csv.str() == "name,vertices,edges,clustering_coefficient,average_degree,error\nlinkpred_test_triangle,3,3,1,2,\n");

  LfrParams base;
  auto timing = timing_sweep(base, {200, 300}, SimilarityMethod::AA, DetectorChoice::LabelPropagation, 3);
  REQUIRE(timing.size() == 2);
  CHECK(timing[0].n == 200);
  CHECK(timing[1].auc);
  CHECK_THROWS_AS(timing_sweep(base, {300, 200}, SimilarityMethod::AA, std::nullopt, 3), ParameterError);
}

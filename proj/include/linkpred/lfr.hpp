#pragma once

#include <cstdint>
#include <vector>

#include "linkpred/community.hpp"
#include "linkpred/graph.hpp"
#include "linkpred/rng.hpp"

namespace linkpred {

/// Parameters of an LFR benchmark network.
struct LfrParams {
  std::size_t n = 1000;
  double k_avg = 10.0;
  std::size_t k_max = 15;
  double tau1 = 2.0;  // degree exponent
  double tau2 = 1.0;  // community size exponent
  std::size_t c_min = 20;
  std::size_t c_max = 40;
  double mu = 0.1;
  std::size_t o_n = 0;  // overlapping vertices
  std::size_t o_m = 1;  // memberships per overlapping vertex
  std::uint64_t seed = 1;

  // generation knobs
  double max_stub_discard = 0.01;
  double mu_tolerance = 0.05;
  std::size_t repair_passes = 100;
  std::size_t max_assignment_retries = 10000;
  std::size_t max_reseeds = 5;

  /// Throws ParameterError naming the first violated constraint.
  void validate() const;

  /// Total community slots: n + o_n * (o_m - 1).
  std::size_t membership_total() const { return n + o_n * (o_m - 1); }
};

struct LfrNetwork {
  Graph graph;
  Cover ground_truth;
  double achieved_mu = 0.0;
  std::size_t min_degree = 0;
  std::uint64_t attempt_seed = 0;  // seed of the attempt that succeeded
  std::size_t discarded_stubs = 0;
};

/// count draws from P(x) ∝ x^-exponent on the integers [lo, hi].
/// The support is finite, so any exponent >= 1 (including the boundary 1)
/// gives a proper distribution.
std::vector<std::size_t> sample_power_law(std::size_t count, double exponent, std::size_t lo,
                                          std::size_t hi, Rng& rng);

/// Mean of the truncated discrete power law on [lo, hi].
double power_law_mean(double exponent, std::size_t lo, std::size_t hi);

/// Smallest degree whose truncated power law on [k_min, k_max] has mean
/// closest to k_avg. Throws ParameterError if no choice is within 20%.
std::size_t choose_min_degree(const LfrParams& params);

/// n degrees in [k_min, k_max] with an even sum.
std::vector<std::size_t> sample_degree_sequence(const LfrParams& params, Rng& rng);

/// Community sizes in [c_min, c_max] summing exactly to membership_total().
std::vector<std::size_t> sample_community_sizes(const LfrParams& params, Rng& rng);

/// Internal degree quota round((1 - mu) * k), half up.
std::size_t internal_degree(std::size_t degree, double mu);

/// Places every vertex into 1 (or o_m, for o_n random vertices) distinct
/// communities so that community c receives exactly sizes[c] members and no
/// vertex sits in a community too small for its internal degree.
Cover assign_memberships(const std::vector<std::size_t>& sizes,
                         const std::vector<std::size_t>& degrees, const LfrParams& params,
                         Rng& rng);

/// Full pipeline. Throws ParameterError, or std::runtime_error when no
/// reseeded attempt meets the stub-discard and mixing tolerances.
LfrNetwork generate_lfr(const LfrParams& params);

/// Fraction of edges whose endpoints share no community.
double mixing_fraction(const Graph& g, const Cover& cover);

}  // namespace linkpred

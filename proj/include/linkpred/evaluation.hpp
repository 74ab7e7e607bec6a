#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "linkpred/community.hpp"
#include "linkpred/predictor.hpp"
#include "linkpred/rng.hpp"

namespace linkpred {

/// AUC requested with no positives or no negatives.
struct UndefinedAucError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LabeledInstance {
  std::size_t position = 0;
  double score = 0.0;
  Tier tier = Tier::Inter;
  bool positive = false;
};

struct LabeledRanking {
  std::vector<LabeledInstance> instances;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

struct AucResult {
  double auc = 0.0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

/// -1, 0 or +1: whether a is outranked by, tied with, or outranks b.
/// A tie needs the same tier and the same score; list position is ignored.
inline int compare_rank(Tier ta, double sa, Tier tb, double sb) {
  if (ta != tb) return ta < tb ? 1 : -1;
  if (sa == sb) return 0;
  return sa > sb ? 1 : -1;
}

/// Marks the removed edges among the candidates as positives. Throws
/// IntegrityError if a removed pair is not a candidate.
LabeledRanking label_ranking(const RankedPredictions& preds, const EdgeSet& removed);

/// Exact rank AUC with ties counted half, by tie-group accumulation.
AucResult auc_exact(const LabeledRanking& lr);

/// Monte-Carlo AUC over `samples` random (positive, negative) pairs.
AucResult auc_sampled(const LabeledRanking& lr, std::size_t samples, Rng& rng);

/// Sampled AUC that scores candidates on demand instead of ranking all
/// non-edges. Negatives are drawn uniformly from the non-edges of the
/// observed graph that are not removed edges. cover == nullptr gives the
/// single-tier baseline.
AucResult auc_sampled_direct(const Graph& observed, const Cover* cover, SimilarityMethod method,
                             const EdgeSet& removed, std::size_t samples, Rng& rng);

/// ROC curve with one point per tie group, from (0,0) to (1,1).
std::vector<RocPoint> roc_points(const LabeledRanking& lr);

/// Trapezoidal area under a ROC polyline.
double roc_area(std::span<const RocPoint> points);

/// CSV with header fpr,tpr.
void write_roc_csv(std::ostream& out, std::span<const RocPoint> points);

}  // namespace linkpred

#pragma once

#include <iosfwd>
#include <vector>

#include "linkpred/community.hpp"
#include "linkpred/graph.hpp"
#include "linkpred/similarity.hpp"

namespace linkpred {

/// Position of a candidate in the two-sequence ranking. Intra-community
/// candidates always precede inter-community ones.
enum class Tier : unsigned char { Intra = 0, Inter = 1 };

inline const char* tier_name(Tier t) { return t == Tier::Intra ? "intra" : "inter"; }

struct ScoredPair {
  VertexId u = 0;  // u < v
  VertexId v = 0;
  double score = 0.0;
  Tier tier = Tier::Inter;

  friend bool operator==(const ScoredPair&, const ScoredPair&) = default;
};

/// Ranking order: tier first, then score descending, then (u, v) ascending.
inline bool ranks_before(const ScoredPair& a, const ScoredPair& b) {
  if (a.tier != b.tier) return a.tier < b.tier;
  if (a.score != b.score) return a.score > b.score;
  if (a.u != b.u) return a.u < b.u;
  return a.v < b.v;
}

struct RankedPredictions {
  std::vector<ScoredPair> pairs;
  std::size_t intra_count = 0;
  std::size_t inter_count = 0;

  std::size_t size() const { return pairs.size(); }
};

/// Scores every non-edge of g, splits candidates by whether the endpoints
/// share a community, and concatenates the two score-sorted sequences.
RankedPredictions rank_community_aware(const Graph& g, const Cover& cover, SimilarityMethod method);

/// Single-sequence ranking of every non-edge (all tagged Inter).
RankedPredictions rank_baseline(const Graph& g, SimilarityMethod method);

std::vector<ScoredPair> top_k(const RankedPredictions& preds, std::size_t k);

/// CSV with header u,v,tier,score,rank; rank starts at 1.
void write_predictions_csv(std::ostream& out, std::span<const ScoredPair> pairs, const LabelMap& labels);

}  // namespace linkpred

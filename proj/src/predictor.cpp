#include "linkpred/predictor.hpp"

#include <algorithm>
#include <ostream>

#include "linkpred/format.hpp"

namespace linkpred {

namespace {

RankedPredictions rank_impl(const Graph& g, const Cover* cover, SimilarityMethod method) {
  RankedPredictions out;
  const std::size_t n = g.vertex_count();
  out.pairs.reserve(n * (n - (n > 0)) / 2 - g.edge_count());
  for_each_non_edge(g, [&](VertexId u, VertexId v) {
    const Tier tier = cover && same_community(*cover, u, v) ? Tier::Intra : Tier::Inter;
    out.pairs.push_back({u, v, score(method, g, u, v), tier});
  });
  // candidates arrive in canonical order, so a stable sort on (tier, score)
  // gives the canonical tie-break for free
  std::stable_sort(out.pairs.begin(), out.pairs.end(), [](const ScoredPair& a, const ScoredPair& b) {
    if (a.tier != b.tier) return a.tier < b.tier;
    return a.score > b.score;
  });
  out.intra_count = std::size_t(std::count_if(out.pairs.begin(), out.pairs.end(),
                                              [](const ScoredPair& p) { return p.tier == Tier::Intra; }));
  out.inter_count = out.pairs.size() - out.intra_count;
  return out;
}

}  // namespace

RankedPredictions rank_community_aware(const Graph& g, const Cover& cover, SimilarityMethod method) {
  if (cover.vertex_count() != g.vertex_count())
    throw ParameterError("cover has " + std::to_string(cover.vertex_count()) + " vertices, graph has " +
                         std::to_string(g.vertex_count()));
  return rank_impl(g, &cover, method);
}

RankedPredictions rank_baseline(const Graph& g, SimilarityMethod method) {
  return rank_impl(g, nullptr, method);
}

std::vector<ScoredPair> top_k(const RankedPredictions& preds, std::size_t k) {
  const auto len = std::min(k, preds.pairs.size());
  return {preds.pairs.begin(), preds.pairs.begin() + std::ptrdiff_t(len)};
}

void write_predictions_csv(std::ostream& out, std::span<const ScoredPair> pairs, const LabelMap& labels) {
  out << "u,v,tier,score,rank\n";
  std::size_t rank = 1;
  for (const auto& p : pairs)
    out << labels.label(p.u) << ',' << labels.label(p.v) << ',' << tier_name(p.tier) << ','
        << format_real(p.score) << ',' << rank++ << '\n';
}

}  // namespace linkpred

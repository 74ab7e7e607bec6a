#include "linkpred/evaluation.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_set>

#include "linkpred/format.hpp"

namespace linkpred {

namespace {

void require_defined(std::size_t p, std::size_t n) {
  if (p == 0 || n == 0)
    throw UndefinedAucError("AUC undefined with " + std::to_string(p) + " positives and " +
                            std::to_string(n) + " negatives");
}

struct TieGroup {
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

// Tie groups in rank order (best first).
std::vector<TieGroup> tie_groups(const LabeledRanking& lr) {
  std::vector<const LabeledInstance*> order;
  order.reserve(lr.instances.size());
  for (const auto& x : lr.instances) order.push_back(&x);
  std::sort(order.begin(), order.end(), [](const LabeledInstance* a, const LabeledInstance* b) {
    return compare_rank(a->tier, a->score, b->tier, b->score) > 0;
  });
  std::vector<TieGroup> groups;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || compare_rank(order[i]->tier, order[i]->score, order[i - 1]->tier, order[i - 1]->score) != 0)
      groups.emplace_back();
    (order[i]->positive ? groups.back().positives : groups.back().negatives)++;
  }
  return groups;
}

}  // namespace

LabeledRanking label_ranking(const RankedPredictions& preds, const EdgeSet& removed) {
  std::unordered_set<std::uint64_t> keys;
  keys.reserve(removed.size() * 2);
  for (const Edge& e : removed) keys.insert(pair_key(e.u, e.v));

  LabeledRanking lr;
  lr.instances.reserve(preds.pairs.size());
  for (std::size_t i = 0; i < preds.pairs.size(); ++i) {
    const auto& p = preds.pairs[i];
    const bool pos = keys.count(pair_key(p.u, p.v)) != 0;
    lr.instances.push_back({i, p.score, p.tier, pos});
    (pos ? lr.positives : lr.negatives)++;
  }
  if (lr.positives != removed.size())
    throw IntegrityError(std::to_string(removed.size() - lr.positives) +
                         " removed edges are not among the candidate pairs");
  return lr;
}

AucResult auc_exact(const LabeledRanking& lr) {
  require_defined(lr.positives, lr.negatives);
  // twice the numerator, kept integral: 2 per outranked negative, 1 per tie
  unsigned long long doubled = 0;
  std::size_t negatives_below = lr.negatives;
  for (const auto& g : tie_groups(lr)) {
    negatives_below -= g.negatives;
    doubled += 2ULL * g.positives * negatives_below + 1ULL * g.positives * g.negatives;
  }
  const double pn = double(lr.positives) * double(lr.negatives);
  return {double(doubled) / (2.0 * pn), lr.positives, lr.negatives};
}

AucResult auc_sampled(const LabeledRanking& lr, std::size_t samples, Rng& rng) {
  require_defined(lr.positives, lr.negatives);
  if (samples < 1) throw ParameterError("sample count must be >= 1");
  std::vector<const LabeledInstance*> pos, neg;
  for (const auto& x : lr.instances) (x.positive ? pos : neg).push_back(&x);
  std::uniform_int_distribution<std::size_t> pick_pos(0, pos.size() - 1), pick_neg(0, neg.size() - 1);
  double total = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto* p = pos[pick_pos(rng)];
    const auto* q = neg[pick_neg(rng)];
    const int c = compare_rank(p->tier, p->score, q->tier, q->score);
    total += c > 0 ? 1.0 : (c == 0 ? 0.5 : 0.0);
  }
  return {total / double(samples), lr.positives, lr.negatives};
}

AucResult auc_sampled_direct(const Graph& observed, const Cover* cover, SimilarityMethod method,
                             const EdgeSet& removed, std::size_t samples, Rng& rng) {
  const std::size_t n = observed.vertex_count();
  const std::size_t candidates = n * (n - (n > 0)) / 2 - observed.edge_count();
  for (const Edge& e : removed)
    if (e.v >= n || observed.has_edge(e.u, e.v))
      throw IntegrityError("removed edge is not a non-edge of the observed graph");
  const std::size_t positives = removed.size();
  const std::size_t negatives = candidates - positives;
  require_defined(positives, negatives);
  if (samples < 1) throw ParameterError("sample count must be >= 1");

  auto tier_of = [&](VertexId u, VertexId v) {
    return cover && same_community(*cover, u, v) ? Tier::Intra : Tier::Inter;
  };
  std::uniform_int_distribution<std::size_t> pick_pos(0, positives - 1);
  std::uniform_int_distribution<VertexId> pick_vertex(0, VertexId(n - 1));
  double total = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Edge p = removed.pairs()[pick_pos(rng)];
    Edge q;
    do {
      q = Edge(pick_vertex(rng), pick_vertex(rng));
    } while (q.u == q.v || observed.has_edge(q.u, q.v) || removed.contains(q));
    const int c = compare_rank(tier_of(p.u, p.v), score(method, observed, p.u, p.v), tier_of(q.u, q.v),
                               score(method, observed, q.u, q.v));
    total += c > 0 ? 1.0 : (c == 0 ? 0.5 : 0.0);
  }
  return {total / double(samples), positives, negatives};
}

std::vector<RocPoint> roc_points(const LabeledRanking& lr) {
  require_defined(lr.positives, lr.negatives);
  std::vector<RocPoint> pts{{0.0, 0.0}};
  std::size_t tp = 0, fp = 0;
  for (const auto& g : tie_groups(lr)) {
    tp += g.positives;
    fp += g.negatives;
    pts.push_back({double(fp) / double(lr.negatives), double(tp) / double(lr.positives)});
  }
  return pts;
}

double roc_area(std::span<const RocPoint> points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i)
    area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) / 2.0;
  return area;
}

void write_roc_csv(std::ostream& out, std::span<const RocPoint> points) {
  out << "fpr,tpr\n";
  for (const auto& p : points) out << format_real(p.fpr) << ',' << format_real(p.tpr) << '\n';
}

}  // namespace linkpred

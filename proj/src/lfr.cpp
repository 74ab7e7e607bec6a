#include "linkpred/lfr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace linkpred {

void LfrParams::validate() const {
  auto fail = [](const std::string& what) { throw ParameterError("LFR parameters: " + what); };
  if (n < 2) fail("n must be >= 2");
  if (c_min < 1 || c_min > c_max) fail("need 1 <= c_min <= c_max");
  if (c_max > n) fail("c_max must not exceed n");
  if (k_max < 1 || k_max > n - 1) fail("need 1 <= k_max <= n-1");
  if (!(k_avg > 0.0) || k_avg > double(k_max)) fail("need 0 < k_avg <= k_max");
  if (!(mu >= 0.0 && mu <= 1.0)) fail("mu must lie in [0,1]");
  if (!(tau1 >= 1.0) || !(tau2 >= 1.0)) fail("exponents must be >= 1");
  if (o_n > n) fail("o_n must not exceed n");
  if (o_m < 1) fail("o_m must be >= 1");
  if (o_n > 0 && o_m < 2) fail("o_m must be >= 2 when o_n > 0");
  if (!(max_stub_discard >= 0.0) || !(mu_tolerance >= 0.0)) fail("tolerances must be >= 0");
}

std::vector<std::size_t> sample_power_law(std::size_t count, double exponent, std::size_t lo,
                                          std::size_t hi, Rng& rng) {
  if (lo < 1 || lo > hi) throw ParameterError("power law needs 1 <= lo <= hi");
  if (!(exponent >= 1.0) || !std::isfinite(exponent))
    throw ParameterError("power law exponent must be finite and >= 1");
  std::vector<double> weights;
  weights.reserve(hi - lo + 1);
  for (std::size_t x = lo; x <= hi; ++x) weights.push_back(std::pow(double(x), -exponent));
  std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
  std::vector<std::size_t> out(count);
  for (auto& x : out) x = lo + dist(rng);
  return out;
}

double power_law_mean(double exponent, std::size_t lo, std::size_t hi) {
  double num = 0.0, den = 0.0;
  for (std::size_t x = lo; x <= hi; ++x) {
    const double w = std::pow(double(x), -exponent);
    num += double(x) * w;
    den += w;
  }
  return num / den;
}

std::size_t choose_min_degree(const LfrParams& params) {
  std::size_t best = 1;
  double best_gap = std::abs(power_law_mean(params.tau1, 1, params.k_max) - params.k_avg);
  for (std::size_t k = 2; k <= params.k_max; ++k) {
    const double gap = std::abs(power_law_mean(params.tau1, k, params.k_max) - params.k_avg);
    if (gap < best_gap) {
      best = k;
      best_gap = gap;
    }
  }
  if (best_gap > 0.2 * params.k_avg)
    throw ParameterError("no minimum degree gives a mean degree within 20% of k_avg");
  return best;
}

std::vector<std::size_t> sample_degree_sequence(const LfrParams& params, Rng& rng) {
  params.validate();
  const std::size_t k_min = choose_min_degree(params);
  auto degrees = sample_power_law(params.n, params.tau1, k_min, params.k_max, rng);
  const std::size_t sum = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
  if (sum % 2 == 1) {
    std::vector<std::size_t> above;
    for (std::size_t i = 0; i < degrees.size(); ++i)
      if (degrees[i] > k_min) above.push_back(i);
    if (!above.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, above.size() - 1);
      --degrees[above[pick(rng)]];
    } else {
      // every entry sits at k_min; raise one instead
      std::uniform_int_distribution<std::size_t> pick(0, degrees.size() - 1);
      if (k_min == params.k_max) throw ParameterError("n * k must be even for a constant degree");
      ++degrees[pick(rng)];
    }
  }
  return degrees;
}

std::vector<std::size_t> sample_community_sizes(const LfrParams& params, Rng& rng) {
  params.validate();
  const std::size_t total = params.membership_total();
  if (total < params.c_min) throw ParameterError("membership total is below c_min");

  std::vector<double> weights;
  for (std::size_t x = params.c_min; x <= params.c_max; ++x)
    weights.push_back(std::pow(double(x), -params.tau2));
  std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
  auto draw = [&] { return params.c_min + dist(rng); };

  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::size_t> sizes;
    std::size_t sum = 0;
    int redraws = 0;
    while (sum < total && redraws < 100) {
      const std::size_t s = draw();
      if (sum + s <= total) {
        sizes.push_back(s);
        sum += s;
        continue;
      }
      const std::size_t gap = total - sum;
      if (gap >= params.c_min) {
        sizes.push_back(gap);
        sum = total;
      } else if (!sizes.empty() && sizes.back() + gap <= params.c_max) {
        sizes.back() += gap;
        sum = total;
      } else {
        ++redraws;
      }
    }
    if (sum == total) return sizes;
  }
  throw ParameterError("cannot partition " + std::to_string(total) +
                       " memberships into community sizes within [c_min, c_max]");
}

std::size_t internal_degree(std::size_t degree, double mu) {
  return std::min(degree, round_half_up((1.0 - mu) * double(degree)));
}

Cover assign_memberships(const std::vector<std::size_t>& sizes,
                         const std::vector<std::size_t>& degrees, const LfrParams& params,
                         Rng& rng) {
  const std::size_t n = params.n;
  if (degrees.size() != n) throw ParameterError("degree sequence length differs from n");
  if (std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) != params.membership_total())
    throw ParameterError("community sizes do not sum to the membership total");
  if (params.o_n > 0 && params.o_m > sizes.size())
    throw ParameterError("o_m exceeds the number of communities");

  std::vector<std::size_t> slots(n, 1);
  {
    std::vector<VertexId> ids(n);
    std::iota(ids.begin(), ids.end(), 0u);
    std::shuffle(ids.begin(), ids.end(), rng);
    for (std::size_t i = 0; i < params.o_n; ++i) slots[ids[i]] = params.o_m;
  }

  std::vector<std::size_t> need(n);
  for (std::size_t v = 0; v < n; ++v) need[v] = internal_degree(degrees[v], params.mu);

  // hardest vertices first; the shuffle randomises ties
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return need[a] > need[b]; });

  std::vector<VertexId> pending;  // used as a stack of unplaced membership slots
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (std::size_t s = 0; s < slots[*it]; ++s) pending.push_back(*it);

  const std::size_t k = sizes.size();
  std::vector<std::vector<VertexId>> members(k);
  std::vector<std::vector<CommunityId>> joined(n);
  std::size_t retries = 0;
  std::vector<CommunityId> eligible;
  std::vector<double> room;

  while (!pending.empty()) {
    const VertexId v = pending.back();
    pending.pop_back();
    eligible.clear();
    for (CommunityId c = 0; c < k; ++c) {
      if (sizes[c] < need[v] + 1) continue;
      if (std::find(joined[v].begin(), joined[v].end(), c) != joined[v].end()) continue;
      eligible.push_back(c);
    }
    if (eligible.empty())
      throw ParameterError("internal degree " + std::to_string(need[v]) +
                           " does not fit any community ((1-mu)*k <= community size - 1)");

    room.clear();
    double free_total = 0.0;
    for (CommunityId c : eligible) {
      room.push_back(double(sizes[c] - members[c].size()));
      free_total += room.back();
    }
    CommunityId target;
    if (free_total > 0.0) {
      std::discrete_distribution<std::size_t> pick(room.begin(), room.end());
      target = eligible[pick(rng)];
    } else {
      if (++retries > params.max_assignment_retries)
        throw ParameterError("membership assignment exceeded retry limit; the internal-degree "
                             "constraint (1-mu)*k <= community size - 1 is too tight");
      std::uniform_int_distribution<std::size_t> pick_c(0, eligible.size() - 1);
      target = eligible[pick_c(rng)];
      auto& ms = members[target];
      std::uniform_int_distribution<std::size_t> pick_m(0, ms.size() - 1);
      const std::size_t idx = pick_m(rng);
      const VertexId evicted = ms[idx];
      ms[idx] = ms.back();
      ms.pop_back();
      auto& ej = joined[evicted];
      ej.erase(std::find(ej.begin(), ej.end(), target));
      pending.push_back(evicted);
    }
    members[target].push_back(v);
    joined[v].push_back(target);
  }
  for (auto& ms : members) std::sort(ms.begin(), ms.end());
  return Cover::from_communities(n, members);
}

double mixing_fraction(const Graph& g, const Cover& cover) {
  if (g.edge_count() == 0) return 0.0;
  std::size_t external = 0;
  for (const Edge& e : g.edges())
    if (!same_community(cover, e.u, e.v)) ++external;
  return double(external) / double(g.edge_count());
}

namespace {

/// Edge bookkeeping shared by the internal and external wiring stages.
class Wiring {
 public:
  bool exists(VertexId a, VertexId b) const { return edges_.count(pair_key(a, b)) != 0; }
  void add(VertexId a, VertexId b) { edges_.insert(pair_key(a, b)); }
  void remove(VertexId a, VertexId b) { edges_.erase(pair_key(a, b)); }
  std::vector<Edge> all() const {
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (auto key : edges_) out.emplace_back(VertexId(key >> 32), VertexId(key & 0xffffffffu));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::unordered_set<std::uint64_t> edges_;
};

/// Configuration-model matching of stubs with rejection, followed by
/// rewiring passes: a rejected stub pair (a,b) replaces a random pooled edge
/// (x,y) by (a,x),(b,y) or (a,y),(b,x). Degrees are preserved throughout.
/// Returns the number of stubs left unplaced.
std::size_t wire_stubs(std::vector<VertexId> stubs, Wiring& wiring, std::vector<Edge>& pool,
                       const std::function<bool(VertexId, VertexId)>& allowed,
                       std::size_t passes, Rng& rng) {
  auto valid = [&](VertexId a, VertexId b) { return a != b && !wiring.exists(a, b) && allowed(a, b); };
  auto place = [&](VertexId a, VertexId b) {
    wiring.add(a, b);
    pool.emplace_back(a, b);
  };

  std::shuffle(stubs.begin(), stubs.end(), rng);
  std::vector<VertexId> left;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    if (valid(stubs[i], stubs[i + 1])) {
      place(stubs[i], stubs[i + 1]);
    } else {
      left.push_back(stubs[i]);
      left.push_back(stubs[i + 1]);
    }
  }
  if (stubs.size() % 2 == 1) left.push_back(stubs.back());

  for (std::size_t pass = 0; pass < passes && left.size() >= 2; ++pass) {
    std::shuffle(left.begin(), left.end(), rng);
    std::vector<VertexId> next;
    for (std::size_t i = 0; i + 1 < left.size(); i += 2) {
      const VertexId a = left[i], b = left[i + 1];
      if (valid(a, b)) {
        place(a, b);
        continue;
      }
      bool done = false;
      for (int tries = 0; tries < 20 && !done && !pool.empty(); ++tries) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        const std::size_t idx = pick(rng);
        const Edge e = pool[idx];
        wiring.remove(e.u, e.v);
        for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
          if (valid(a, x) && valid(b, y) && !(a == y && b == x) && pair_key(a, x) != pair_key(b, y)) {
            pool[idx] = pool.back();
            pool.pop_back();
            place(a, x);
            place(b, y);
            done = true;
            break;
          }
        }
        if (!done) wiring.add(e.u, e.v);
      }
      if (!done) {
        next.push_back(a);
        next.push_back(b);
      }
    }
    if (left.size() % 2 == 1) next.push_back(left.back());
    left = std::move(next);
  }
  return left.size();
}

struct Attempt {
  LfrNetwork network;
  std::size_t total_stubs = 0;
};

Attempt generate_once(const LfrParams& params, std::uint64_t seed) {
  Rng rng(seed);
  auto degrees = sample_degree_sequence(params, rng);
  auto sizes = sample_community_sizes(params, rng);
  Cover cover = assign_memberships(sizes, degrees, params, rng);
  auto communities = cover.communities();
  const std::size_t n = params.n;

  // split each vertex's internal quota across its communities in proportion
  // to (size - 1), by largest remainder
  std::vector<std::size_t> external(n);
  std::vector<std::vector<std::size_t>> share(n);
  for (VertexId v = 0; v < n; ++v) {
    const std::size_t kin = internal_degree(degrees[v], params.mu);
    external[v] = degrees[v] - kin;
    auto ms = cover.memberships(v);
    share[v].assign(ms.size(), 0);
    double weight_sum = 0.0;
    for (auto c : ms) weight_sum += double(communities[c].size() - 1);
    std::size_t given = 0;
    std::vector<std::pair<double, std::size_t>> remainders;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const double exact = weight_sum > 0 ? double(kin) * double(communities[ms[i]].size() - 1) / weight_sum : 0.0;
      share[v][i] = std::size_t(std::floor(exact));
      given += share[v][i];
      remainders.emplace_back(exact - std::floor(exact), i);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t r = 0; given < kin && r < remainders.size(); ++r, ++given) ++share[v][remainders[r].second];
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::size_t cap = communities[ms[i]].size() - 1;
      if (share[v][i] > cap) {
        external[v] += share[v][i] - cap;
        share[v][i] = cap;
      }
    }
    if (given < kin) external[v] += kin - given;
  }

  auto slot_of = [&](VertexId v, CommunityId c) {
    auto ms = cover.memberships(v);
    return std::size_t(std::find(ms.begin(), ms.end(), c) - ms.begin());
  };

  Wiring wiring;
  std::size_t total_stubs = 0, leftover = 0;
  for (CommunityId c = 0; c < communities.size(); ++c) {
    const auto& members = communities[c];
    std::size_t sum = 0;
    for (VertexId v : members) sum += share[v][slot_of(v, c)];
    if (sum % 2 == 1) {
      // move one internal stub to the external budget to make the community even
      std::vector<VertexId> candidates;
      for (VertexId v : members)
        if (share[v][slot_of(v, c)] > 0) candidates.push_back(v);
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      const VertexId v = candidates[pick(rng)];
      --share[v][slot_of(v, c)];
      ++external[v];
    }
    std::vector<VertexId> stubs;
    for (VertexId v : members)
      stubs.insert(stubs.end(), share[v][slot_of(v, c)], v);
    total_stubs += stubs.size();
    std::vector<Edge> pool;
    leftover += wire_stubs(std::move(stubs), wiring, pool, [](VertexId, VertexId) { return true; },
                           params.repair_passes, rng);
  }

  std::vector<VertexId> stubs;
  for (VertexId v = 0; v < n; ++v) stubs.insert(stubs.end(), external[v], v);
  total_stubs += stubs.size();
  std::vector<Edge> pool;
  leftover += wire_stubs(std::move(stubs), wiring, pool,
                         [&](VertexId a, VertexId b) { return !same_community(cover, a, b); },
                         params.repair_passes, rng);

  auto edges = wiring.all();
  Attempt out;
  out.network.graph = build_graph(std::span<const Edge>(edges), n);
  out.network.achieved_mu = mixing_fraction(out.network.graph, cover);
  out.network.ground_truth = std::move(cover);
  out.network.min_degree = choose_min_degree(params);
  out.network.attempt_seed = seed;
  out.network.discarded_stubs = leftover;
  out.total_stubs = total_stubs;
  return out;
}

}  // namespace

LfrNetwork generate_lfr(const LfrParams& params) {
  params.validate();
  choose_min_degree(params);
  std::string last_problem;
  bool parameter_problem = false;
  for (std::size_t attempt = 0; attempt <= params.max_reseeds; ++attempt) {
    const std::uint64_t seed = derive_seed(params.seed, {attempt});
    Attempt a;
    try {
      a = generate_once(params, seed);
    } catch (const ParameterError& e) {
      // sizes or assignment may be infeasible for this draw only
      last_problem = e.what();
      parameter_problem = true;
      continue;
    }
    parameter_problem = false;
    const double discard = a.total_stubs == 0 ? 0.0 : double(a.network.discarded_stubs) / double(a.total_stubs);
    if (discard > params.max_stub_discard) {
      last_problem = "discarded stub fraction " + std::to_string(discard) + " exceeds tolerance";
      continue;
    }
    if (std::abs(a.network.achieved_mu - params.mu) > params.mu_tolerance) {
      last_problem = "achieved mixing " + std::to_string(a.network.achieved_mu) + " deviates from mu=" +
                     std::to_string(params.mu);
      continue;
    }
    return std::move(a.network);
  }
  if (parameter_problem) throw ParameterError(last_problem);
  throw std::runtime_error("LFR generation failed after " + std::to_string(params.max_reseeds + 1) +
                           " attempts: " + last_problem);
}

}  // namespace linkpred

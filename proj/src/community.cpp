#include "linkpred/community.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "linkpred/rng.hpp"

namespace linkpred {

Cover Cover::from_labels(std::span<const std::uint32_t> labels) {
  Cover c;
  std::unordered_map<std::uint32_t, CommunityId> dense;
  c.memberships_.resize(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto [it, inserted] = dense.try_emplace(labels[v], CommunityId(dense.size()));
    c.memberships_[v] = {it->second};
  }
  c.community_count_ = dense.size();
  return c;
}

Cover Cover::from_communities(std::size_t n, const std::vector<std::vector<VertexId>>& communities) {
  Cover c;
  c.memberships_.resize(n);
  CommunityId next = 0;
  for (const auto& members : communities) {
    if (members.empty()) continue;
    for (VertexId v : members) {
      if (v >= n) throw ParameterError("community member " + std::to_string(v) + " out of range");
      auto& ms = c.memberships_[v];
      if (ms.empty() || ms.back() != next) ms.push_back(next);
    }
    ++next;
  }
  c.community_count_ = next;
  std::string missing;
  std::size_t n_missing = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!c.memberships_[v].empty()) continue;
    if (n_missing++ < 20) missing += (missing.empty() ? "" : " ") + std::to_string(v);
  }
  if (n_missing > 0)
    throw ParameterError(std::to_string(n_missing) + " vertices belong to no community: " + missing +
                         (n_missing > 20 ? " ..." : ""));
  return c;
}

bool Cover::is_partition() const {
  return std::all_of(memberships_.begin(), memberships_.end(),
                     [](const auto& ms) { return ms.size() == 1; });
}

std::vector<std::vector<VertexId>> Cover::communities() const {
  std::vector<std::vector<VertexId>> out(community_count_);
  for (VertexId v = 0; v < memberships_.size(); ++v)
    for (CommunityId c : memberships_[v]) out[c].push_back(v);
  return out;
}

std::string_view detector_name(DetectorChoice d) {
  switch (d) {
    case DetectorChoice::LabelPropagation: return "label_propagation";
    case DetectorChoice::GreedyModularity: return "greedy_modularity";
    case DetectorChoice::Loaded: return "loaded";
  }
  return "?";
}

DetectorChoice parse_detector(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  if (lower == "label_propagation" || lower == "lp") return DetectorChoice::LabelPropagation;
  if (lower == "greedy_modularity" || lower == "gm") return DetectorChoice::GreedyModularity;
  if (lower == "loaded" || lower == "ground_truth") return DetectorChoice::Loaded;
  throw ParameterError("unknown detector '" + std::string(name) + "'");
}

bool same_community(const Cover& cover, VertexId u, VertexId v) {
  auto a = cover.memberships(u);
  auto b = cover.memberships(v);
  if (a.size() == 1 && b.size() == 1) return a[0] == b[0];
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

Cover detect_label_propagation(const Graph& g, std::uint64_t seed, std::size_t max_sweeps) {
  if (max_sweeps < 1) throw ParameterError("max_sweeps must be >= 1");
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> label(n);
  std::iota(label.begin(), label.end(), 0u);
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0u);

  Rng rng(seed);
  std::vector<std::uint32_t> count(n, 0);
  std::vector<std::uint32_t> touched;
  std::vector<std::uint32_t> best;

  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    std::shuffle(order.begin(), order.end(), rng);
    bool changed = false;
    for (VertexId v : order) {
      auto adj = g.neighbors(v);
      if (adj.empty()) continue;
      touched.clear();
      std::uint32_t top = 0;
      for (VertexId w : adj) {
        const auto l = label[w];
        if (count[l]++ == 0) touched.push_back(l);
        top = std::max(top, count[l]);
      }
      best.clear();
      for (auto l : touched)
        if (count[l] == top) best.push_back(l);
      for (auto l : touched) count[l] = 0;

      // a vertex already holding a majority label keeps it, so a converged
      // labelling is a fixed point of further sweeps
      if (std::find(best.begin(), best.end(), label[v]) != best.end()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, best.size() - 1);
      label[v] = best[pick(rng)];
      changed = true;
    }
    if (!changed) break;
  }
  return Cover::from_labels(label);
}

namespace {

struct MergeCandidate {
  std::int64_t gain = 0;
  CommunityId partner = 0;
  bool valid = false;
};

}  // namespace

Cover detect_greedy_modularity(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const auto two_m = std::int64_t(2 * g.edge_count());

  // links[c][d]: number of edges between communities c and d (c != d)
  std::vector<std::map<CommunityId, std::int64_t>> links(n);
  std::vector<std::int64_t> degree(n);
  std::vector<std::uint32_t> owner(n);
  std::iota(owner.begin(), owner.end(), 0u);
  std::vector<std::vector<VertexId>> members(n);
  for (VertexId v = 0; v < n; ++v) {
    members[v] = {v};
    degree[v] = std::int64_t(g.degree(v));
    for (VertexId w : g.neighbors(v)) links[v][w] = 1;
  }

  // Modularity gain of merging c and d is (2m * L_cd - d_c * d_d) / (2 m^2);
  // the integer numerator orders candidates exactly.
  auto gain = [&](CommunityId c, CommunityId d) {
    return two_m * links[c].at(d) - degree[c] * degree[d];
  };
  std::vector<MergeCandidate> best(n);
  auto refresh = [&](CommunityId c) {
    MergeCandidate b;
    for (auto it = links[c].upper_bound(c); it != links[c].end(); ++it) {
      const auto gn = gain(c, it->first);
      if (!b.valid || gn > b.gain) b = {gn, it->first, true};
    }
    best[c] = b;
  };
  for (CommunityId c = 0; c < n; ++c) refresh(c);

  std::vector<bool> alive(n, true);
  while (true) {
    MergeCandidate top;
    CommunityId a = 0;
    for (CommunityId c = 0; c < n; ++c) {
      if (!alive[c] || !best[c].valid) continue;
      if (!top.valid || best[c].gain > top.gain) {
        top = best[c];
        a = c;
      }
    }
    if (!top.valid || top.gain <= 0) break;

    const CommunityId b = top.partner;  // a < b; b is absorbed into a
    std::vector<CommunityId> affected;
    for (auto [k, w] : links[b]) {
      if (k == a) continue;
      links[a][k] += w;
      links[k][a] += w;
      links[k].erase(b);
    }
    links[a].erase(b);
    links[b].clear();
    degree[a] += degree[b];
    alive[b] = false;
    best[b] = {};
    for (VertexId v : members[b]) owner[v] = a;
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();

    refresh(a);
    for (auto [k, w] : links[a]) refresh(k);
    // pairs whose partner was b must be recomputed as well
    for (CommunityId c = 0; c < n; ++c)
      if (alive[c] && best[c].valid && best[c].partner == b) refresh(c);
  }
  return Cover::from_labels(owner);
}

double modularity(const Graph& g, const Cover& cover) {
  if (!cover.is_partition()) throw ParameterError("modularity requires a partition");
  if (g.edge_count() == 0) throw ParameterError("modularity undefined on an edgeless graph");
  if (cover.vertex_count() != g.vertex_count())
    throw ParameterError("cover does not match graph vertex count");
  const double m = double(g.edge_count());
  std::vector<double> inner(cover.community_count(), 0.0);
  std::vector<double> total(cover.community_count(), 0.0);
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    const auto cu = cover.community_of(u);
    total[cu] += double(g.degree(u));
    for (VertexId v : g.neighbors(u))
      if (u < v && cover.community_of(v) == cu) inner[cu] += 1.0;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < inner.size(); ++c) {
    const double share = total[c] / (2.0 * m);
    q += inner[c] / m - share * share;
  }
  return q;
}

Cover load_cover(std::istream& in, const LabelMap& labels) {
  std::vector<std::vector<VertexId>> communities;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<VertexId> members;
    std::string tok;
    while (ls >> tok) {
      if (members.empty() && tok.front() == '#') break;
      auto id = labels.find(tok);
      if (!id) throw ParameterError("line " + std::to_string(lineno) + ": unknown vertex label '" + tok + "'");
      members.push_back(*id);
    }
    if (members.empty()) continue;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    communities.push_back(std::move(members));
  }
  return Cover::from_communities(labels.size(), communities);
}

Cover load_cover_file(const std::string& path, const LabelMap& labels) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open community file '" + path + "'");
  return load_cover(in, labels);
}

void write_cover(std::ostream& out, const Cover& cover, const LabelMap& labels) {
  for (const auto& members : cover.communities()) {
    for (std::size_t i = 0; i < members.size(); ++i)
      out << (i ? " " : "") << labels.label(members[i]);
    out << '\n';
  }
}

}  // namespace linkpred

#include "linkpred/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "linkpred/rng.hpp"

namespace linkpred {

EdgeSet::EdgeSet(std::vector<Edge> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

bool EdgeSet::contains(Edge e) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), e);
}

std::span<const VertexId> Graph::neighbors(VertexId u) const {
  if (u >= adjacency_.size())
    throw std::out_of_range("vertex " + std::to_string(u) + " out of range");
  return adjacency_[u];
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  auto nu = neighbors(u);
  auto nv = neighbors(v);
  // search the shorter list
  if (nu.size() > nv.size()) return std::binary_search(nv.begin(), nv.end(), u);
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (VertexId u = 0; u < adjacency_.size(); ++u)
    for (VertexId v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph build_graph(std::span<const Edge> edges, std::size_t n) {
  Graph g;
  g.adjacency_.assign(n, {});
  for (const Edge& e : edges) {
    if (e.u == e.v)
      throw ParameterError("self-loop (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    if (e.v >= n)
      throw ParameterError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") has endpoint >= n=" + std::to_string(n));
    g.adjacency_[e.u].push_back(e.v);
    g.adjacency_[e.v].push_back(e.u);
  }
  std::size_t ends = 0;
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    adj.shrink_to_fit();
    ends += adj.size();
  }
  g.edge_count_ = ends / 2;
  return g;
}

Graph build_graph(std::span<const std::pair<VertexId, VertexId>> pairs,
                  std::optional<std::size_t> n) {
  std::size_t count = 0;
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    if (a == b)
      throw ParameterError("self-loop (" + std::to_string(a) + "," + std::to_string(b) + ")");
    edges.emplace_back(a, b);
    count = std::max<std::size_t>(count, std::size_t(std::max(a, b)) + 1);
  }
  if (n) {
    if (count > *n)
      throw ParameterError("endpoint " + std::to_string(count - 1) + " >= n=" + std::to_string(*n));
    count = *n;
  }
  return build_graph(std::span<const Edge>(edges), count);
}

std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

Observation remove_random_edges(const Graph& g, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw ParameterError("removal fraction must lie in [0,1]");
  std::vector<Edge> all = g.edges();
  const std::size_t k = std::min(all.size(), round_half_up(fraction * double(all.size())));

  // partial Fisher-Yates: the first k slots become the removed sample
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  std::vector<Edge> removed(all.begin(), all.begin() + std::ptrdiff_t(k));
  std::span<const Edge> kept(all.begin() + std::ptrdiff_t(k), all.end());
  return {build_graph(kept, g.vertex_count()), EdgeSet(std::move(removed))};
}

void for_each_non_edge(const Graph& g, const std::function<void(VertexId, VertexId)>& fn) {
  const auto n = VertexId(g.vertex_count());
  for (VertexId u = 0; u < n; ++u) {
    auto adj = g.neighbors(u);
    auto it = std::upper_bound(adj.begin(), adj.end(), u);
    for (VertexId v = u + 1; v < n; ++v) {
      if (it != adj.end() && *it == v) {
        ++it;
        continue;
      }
      fn(u, v);
    }
  }
}

std::vector<Edge> non_edges(const Graph& g) {
  std::vector<Edge> out;
  const std::size_t n = g.vertex_count();
  out.reserve(n * (n - (n > 0)) / 2 - g.edge_count());
  for_each_non_edge(g, [&](VertexId u, VertexId v) { out.emplace_back(u, v); });
  return out;
}

double clustering_coefficient(const Graph& g) {
  double total = 0.0;
  std::size_t counted = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto adj = g.neighbors(v);
    const std::size_t k = adj.size();
    if (k < 2) continue;
    std::size_t links = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (g.has_edge(adj[i], adj[j])) ++links;
    total += double(links) / (double(k) * double(k - 1) / 2.0);
    ++counted;
  }
  return counted == 0 ? 0.0 : total / double(counted);
}

double average_degree(const Graph& g) {
  if (g.vertex_count() == 0) throw ParameterError("average degree of an empty graph");
  return 2.0 * double(g.edge_count()) / double(g.vertex_count());
}

VertexId LabelMap::intern(const std::string& label) {
  auto [it, inserted] = ids_.try_emplace(label, VertexId(labels_.size()));
  if (inserted) labels_.push_back(label);
  return it->second;
}

std::optional<VertexId> LabelMap::find(const std::string& label) const {
  auto it = ids_.find(label);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

LabelMap LabelMap::identity(std::size_t n) {
  LabelMap m;
  for (std::size_t i = 0; i < n; ++i) m.intern(std::to_string(i));
  return m;
}

LabeledGraph read_edge_list(std::istream& in) {
  LabeledGraph out;
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a)) continue;
    if (a.front() == '#') continue;
    if (!(ls >> b))
      throw ParameterError("line " + std::to_string(lineno) + ": expected two vertex labels");
    if (a == b) throw ParameterError("line " + std::to_string(lineno) + ": self-loop (" + a + "," + b + ")");
    VertexId u = out.labels.intern(a);
    VertexId v = out.labels.intern(b);
    pairs.emplace_back(u, v);
  }
  out.graph = build_graph(std::span<const std::pair<VertexId, VertexId>>(pairs), out.labels.size());
  return out;
}

LabeledGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open edge list '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g, const LabelMap& labels) {
  for (const Edge& e : g.edges()) out << labels.label(e.u) << ' ' << labels.label(e.v) << '\n';
}

}  // namespace linkpred

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace linkpred {

using VertexId = std::uint32_t;

/// Invalid parameters or malformed input.
struct ParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inconsistent data between stages (e.g. a removed edge that is not a candidate).
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unordered vertex pair, always stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  Edge() = default;
  Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Packs a canonical pair into one key for hashing.
inline std::uint64_t pair_key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t(u) << 32) | v;
}

/// Sorted, duplicate-free set of canonical pairs.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::vector<Edge> pairs);

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  bool contains(Edge e) const;
  const std::vector<Edge>& pairs() const { return pairs_; }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

 private:
  std::vector<Edge> pairs_;
};

class Graph;

/// Builds a graph from raw pairs. Duplicates collapse; self-loops and
/// endpoints >= n are rejected with ParameterError. n defaults to max id + 1.
Graph build_graph(std::span<const std::pair<VertexId, VertexId>> pairs,
                  std::optional<std::size_t> n = std::nullopt);

/// Same, from already canonical edges with a fixed vertex count.
Graph build_graph(std::span<const Edge> edges, std::size_t n);

/// Immutable undirected simple graph over dense ids 0..n-1.
class Graph {
 public:
  Graph() = default;

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  /// Sorted neighbor ids of u. Throws std::out_of_range for bad ids.
  std::span<const VertexId> neighbors(VertexId u) const;
  std::size_t degree(VertexId u) const { return neighbors(u).size(); }
  bool has_edge(VertexId u, VertexId v) const;

  /// All edges in canonical sorted order.
  std::vector<Edge> edges() const;

 private:
  friend Graph build_graph(std::span<const Edge>, std::size_t);
  friend Graph build_graph(std::span<const std::pair<VertexId, VertexId>>,
                           std::optional<std::size_t>);

  std::vector<std::vector<VertexId>> adjacency_;
  std::size_t edge_count_ = 0;
};

struct Observation {
  Graph observed;
  EdgeSet removed;
};

/// Rounds half up; used for every "round(f * count)" in the toolkit.
std::size_t round_half_up(double x);

/// Removes round(fraction * m) edges chosen uniformly without replacement.
Observation remove_random_edges(const Graph& g, double fraction, std::uint64_t seed);

/// Calls fn(u, v) for every unconnected pair u < v, in canonical order.
void for_each_non_edge(const Graph& g, const std::function<void(VertexId, VertexId)>& fn);

/// Collects the non-edges; prefer for_each_non_edge on large graphs.
std::vector<Edge> non_edges(const Graph& g);

/// Mean local clustering over vertices of degree >= 2; 0 if there are none.
double clustering_coefficient(const Graph& g);

/// 2m / n. Throws ParameterError on an empty graph.
double average_degree(const Graph& g);

/// Bidirectional map between external string labels and dense ids.
class LabelMap {
 public:
  /// Returns the id for label, assigning the next free id if new.
  VertexId intern(const std::string& label);
  std::optional<VertexId> find(const std::string& label) const;
  const std::string& label(VertexId id) const { return labels_.at(id); }
  std::size_t size() const { return labels_.size(); }

  /// Identity map "0".."n-1".
  static LabelMap identity(std::size_t n);

 private:
  std::unordered_map<std::string, VertexId> ids_;
  std::vector<std::string> labels_;
};

struct LabeledGraph {
  Graph graph;
  LabelMap labels;
};

/// Parses "a b" per line; '#' lines and blank lines are skipped.
LabeledGraph read_edge_list(std::istream& in);
LabeledGraph read_edge_list_file(const std::string& path);

/// Writes "u v" lines (u < v by id) in sorted order using the given labels.
void write_edge_list(std::ostream& out, const Graph& g, const LabelMap& labels);

}  // namespace linkpred

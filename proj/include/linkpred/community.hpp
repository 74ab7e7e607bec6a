#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "linkpred/graph.hpp"

namespace linkpred {

using CommunityId = std::uint32_t;

/// Assignment of every vertex to one or more communities with dense ids.
///
/// A partition is the special case where each vertex has exactly one
/// membership. Memberships are kept sorted per vertex so pair queries are a
/// short merge.
class Cover {
 public:
  Cover() = default;

  /// Partition from per-vertex labels; labels are renumbered densely in
  /// order of first appearance.
  static Cover from_labels(std::span<const std::uint32_t> labels);

  /// Cover from explicit community member lists over n vertices. Empty lists
  /// are dropped. Throws ParameterError if any vertex is left uncovered.
  static Cover from_communities(std::size_t n, const std::vector<std::vector<VertexId>>& communities);

  std::size_t vertex_count() const { return memberships_.size(); }
  std::size_t community_count() const { return community_count_; }
  std::span<const CommunityId> memberships(VertexId v) const { return memberships_.at(v); }
  bool is_partition() const;

  /// Member lists, indexed by community id, each sorted.
  std::vector<std::vector<VertexId>> communities() const;

  /// Single community id of v in a partition.
  CommunityId community_of(VertexId v) const { return memberships_.at(v).front(); }

 private:
  std::vector<std::vector<CommunityId>> memberships_;
  std::size_t community_count_ = 0;
};

/// How phase one obtains a cover.
enum class DetectorChoice { LabelPropagation, GreedyModularity, Loaded };

std::string_view detector_name(DetectorChoice d);
DetectorChoice parse_detector(std::string_view name);

/// True iff u and v share at least one community.
bool same_community(const Cover& cover, VertexId u, VertexId v);

/// Asynchronous label propagation with seeded visit order and tie-breaks.
Cover detect_label_propagation(const Graph& g, std::uint64_t seed, std::size_t max_sweeps = 100);

/// Agglomerative greedy modularity maximisation (Clauset-Newman-Moore
/// merge order). Deterministic; equal gains resolve to the smallest
/// community-id pair. An edgeless graph yields singletons.
Cover detect_greedy_modularity(const Graph& g);

/// Newman modularity of a partition. Throws ParameterError if the cover
/// overlaps or the graph has no edges.
double modularity(const Graph& g, const Cover& cover);

/// Reads one community per line as whitespace-separated vertex labels.
Cover load_cover(std::istream& in, const LabelMap& labels);
Cover load_cover_file(const std::string& path, const LabelMap& labels);

/// Writes one community per line, members in ascending id order.
void write_cover(std::ostream& out, const Cover& cover, const LabelMap& labels);

}  // namespace linkpred

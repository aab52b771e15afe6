#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace omv {

using NodeId = std::uint32_t;

/// Undirected simple graph with dense node ids in [0, N) and external labels.
///
/// Adjacency lists are sorted and symmetric. Instances are immutable once
/// built, so a Graph can be shared freely between reader threads.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from label names and an edge list over dense ids.
  /// Self-loops are dropped and duplicate or reversed edges merged.
  static Graph from_edges(std::vector<std::string> labels,
                          std::span<const std::pair<NodeId, NodeId>> edges);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }
  bool empty() const noexcept { return node_count() == 0; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Looks up the dense id of an external label; false when absent.
  bool find(std::string_view label, NodeId& out) const;

  /// Each undirected edge once, as (u, v) with u < v, in ascending order.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  /// Induced subgraph on the nodes with keep[v] set; ids re-densified in
  /// ascending order of the original ids, labels preserved.
  Graph induced(const std::vector<bool>& keep) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
};

struct LoadDiagnostics {
  std::size_t lines_read = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges_merged = 0;
};

/// Reads a whitespace- or comma-separated edge list. Lines starting with
/// '#' or '%' and blank lines are ignored. Labels are densified in first-seen
/// order.
Graph load_edge_list(std::istream& in, LoadDiagnostics* diagnostics = nullptr);
Graph load_edge_list_file(const std::string& path, LoadDiagnostics* diagnostics = nullptr);

/// Writes "u v" label pairs, one edge per line.
void save_edge_list(const Graph& g, std::ostream& out);

/// Largest connected component; ties go to the component holding the
/// smallest dense id.
Graph largest_connected_component(const Graph& g);

/// Component index per node, numbered in order of smallest contained id.
std::vector<std::size_t> connected_components(const Graph& g);

struct TopologyStats {
  std::size_t n = 0;
  std::size_t m = 0;
  double avg_degree = 0.0;
  double transitivity = 0.0;
};

TopologyStats topology_stats(const Graph& g);

/// Number of triangles, each counted once.
std::uint64_t triangle_count(const Graph& g);

std::size_t degree(const Graph& g, NodeId v);

}  // namespace omv

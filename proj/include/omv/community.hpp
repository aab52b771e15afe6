#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "omv/graph.hpp"

namespace omv {

using CommunityId = std::uint32_t;

/// Overlapping community assignment.
///
/// Every node belongs to at least one community and every community has at
/// least one member. Belonging coefficients are uniform: a node that belongs
/// to O communities has coefficient 1/O in each of them and 0 elsewhere, so
/// each node's coefficients sum to one.
class Cover {
 public:
  Cover() = default;

  /// Builds a cover from per-node community lists. Community ids must be
  /// dense in [0, K) with no unused id; repeated ids within a node collapse.
  static Cover from_memberships(std::vector<std::vector<CommunityId>> memberships);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t community_count() const noexcept { return members_.size(); }

  /// Sorted community ids of node v.
  std::span<const CommunityId> memberships(NodeId v) const {
    return {ids_.data() + offsets_[v], ids_.data() + offsets_[v + 1]};
  }
  std::size_t membership_count(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool contains(NodeId v, CommunityId c) const;

  /// Coefficient of v in any community it belongs to (1/O_v).
  double coefficient(NodeId v) const { return coefficient_[v]; }
  /// a_{v,c}: 1/O_v when v is in c, otherwise 0.
  double belonging(NodeId v, CommunityId c) const {
    return contains(v, c) ? coefficient_[v] : 0.0;
  }

  /// Sorted member ids of community c.
  const std::vector<NodeId>& members(CommunityId c) const { return members_[c]; }

  bool is_crisp() const noexcept { return ids_.size() == node_count(); }

  /// Relabels communities by (size descending, smallest member ascending).
  Cover canonicalized() const;

  /// The cover restricted to nodes with keep[v] set, node ids re-densified in
  /// ascending order; communities left empty are dropped and the rest keep
  /// their relative order. Coefficients are recomputed from the surviving
  /// memberships, which are unchanged for kept nodes.
  Cover restricted(const std::vector<bool>& keep) const;

  friend bool operator==(const Cover& a, const Cover& b) {
    return a.offsets_ == b.offsets_ && a.ids_ == b.ids_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<CommunityId> ids_;
  std::vector<double> coefficient_;
  std::vector<std::vector<NodeId>> members_;
};

/// A cover in which every node belongs to exactly one community.
class Partition {
 public:
  Partition() = default;

  static Partition from_assignment(std::span<const CommunityId> community_of);
  /// Throws a coverage error when some node has more than one community.
  static Partition from_cover(Cover cover);

  std::size_t node_count() const noexcept { return cover_.node_count(); }
  std::size_t community_count() const noexcept { return cover_.community_count(); }
  CommunityId community_of(NodeId v) const { return cover_.memberships(v).front(); }
  const Cover& cover() const noexcept { return cover_; }

  friend bool operator==(const Partition& a, const Partition& b) { return a.cover_ == b.cover_; }

 private:
  explicit Partition(Cover c) : cover_(std::move(c)) {}
  Cover cover_;
};

/// Uniform belonging coefficients from raw membership lists.
inline Cover belonging_coefficients(std::vector<std::vector<CommunityId>> memberships) {
  return Cover::from_memberships(std::move(memberships));
}

struct SlpaParams {
  int iterations = 100;
  double threshold = 0.01;
  std::uint64_t seed = 1;
};

/// Speaker-listener label propagation.
///
/// Every node starts with its own label in memory. Each iteration visits the
/// nodes in a fresh random order; every neighbour of the listener sends a
/// label drawn from its memory in proportion to frequency, and the listener
/// records the most frequent label it heard (ties broken at random). After
/// the last iteration, labels holding at least `threshold` of a node's memory
/// become its memberships (the single most frequent label if none does).
/// Communities that duplicate or are contained in another are removed, and
/// belonging coefficients are uniform over what remains.
///
/// Deterministic for a given (graph, params); the result is canonicalized.
Cover slpa_detect(const Graph& g, const SlpaParams& params);

/// Drops every community whose member set is contained in another one
/// (of identical sets the smaller id survives).
Cover remove_nested_communities(const Cover& cover);

struct CoverStats {
  std::size_t community_count = 0;
  double overlap_fraction = 0.0;
  double avg_memberships = 0.0;
};

CoverStats cover_stats(const Cover& cover);

/// Keeps each node's highest-coefficient community (smallest id on ties) and
/// drops communities that end up empty.
Partition collapse_to_partition(const Cover& cover);

/// Cover text format: "label<TAB>c1,c2,..." per node, '#' comment lines.
Cover load_cover(std::istream& in, const Graph& g);
Cover load_cover_file(const std::string& path, const Graph& g);
void save_cover(std::ostream& out, const Cover& cover, const Graph& g);

Partition load_partition(std::istream& in, const Graph& g);
Partition load_partition_file(const std::string& path, const Graph& g);
void save_partition(std::ostream& out, const Partition& p, const Graph& g);

}  // namespace omv

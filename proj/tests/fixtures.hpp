#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "omv/community.hpp"
#include "omv/graph.hpp"

namespace omv::test {

inline Graph graph_from(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("n" + std::to_string(i));
  return Graph::from_edges(std::move(labels), edges);
}

inline void add_clique(std::vector<std::pair<NodeId, NodeId>>& edges, NodeId first, NodeId size) {
  for (NodeId i = first; i < first + size; ++i)
    for (NodeId j = i + 1; j < first + size; ++j) edges.emplace_back(i, j);
}

inline Graph complete_graph(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  add_clique(e, 0, n);
  return graph_from(n, e);
}

inline Graph cycle_graph(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return graph_from(n, e);
}

/// Two K_k cliques on ids [0,k) and [k,2k) plus a bridge node 2k adjacent
/// to node k-1 and node k.
inline Graph two_cliques_with_bridge(NodeId k) {
  std::vector<std::pair<NodeId, NodeId>> e;
  add_clique(e, 0, k);
  add_clique(e, k, k);
  e.emplace_back(2 * k, k - 1);
  e.emplace_back(2 * k, k);
  return graph_from(2 * k + 1, e);
}

/// Two K4 cliques sharing node 3: ids 0..3 and 3..6.
inline Graph two_k4_sharing_node() {
  std::vector<std::pair<NodeId, NodeId>> e;
  add_clique(e, 0, 4);
  add_clique(e, 3, 4);
  return graph_from(7, e);
}

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return graph_from(n, e);
}

/// Random dense assignment of n nodes to k communities, every community used.
inline Partition random_partition(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<CommunityId> a(n);
  for (std::size_t v = 0; v < n; ++v) a[v] = static_cast<CommunityId>(v < k ? v : rng() % k);
  std::shuffle(a.begin(), a.end(), rng);
  return Partition::from_assignment(a);
}

/// Random cover: every node gets 1..max_memberships communities out of k.
inline Cover random_cover(std::size_t n, std::size_t k, std::size_t max_memberships, std::mt19937_64& rng) {
  std::vector<std::vector<CommunityId>> m(n);
  for (std::size_t v = 0; v < n; ++v) {
    m[v].push_back(static_cast<CommunityId>(v < k ? v : rng() % k));
    std::size_t extra = rng() % max_memberships;
    for (std::size_t i = 0; i < extra; ++i) m[v].push_back(static_cast<CommunityId>(rng() % k));
  }
  std::shuffle(m.begin(), m.end(), rng);
  return Cover::from_memberships(std::move(m));
}

}  // namespace omv::test

#pragma once

#include <vector>

#include "omv/community.hpp"
#include "omv/graph.hpp"
#include "omv/modularity.hpp"
#include "omv/scores.hpp"

namespace omv {

/// Incremental vitality evaluator.
///
/// Holds the base tallies plus the two global aggregates
///   S1 = sum_k intra_k   and   S2 = sum_k (2 intra_k + inter_k)^2,
/// so Q = S1/|E| - S2/(4|E|^2). Removing v subtracts the contributions of
/// v's incident edges from the communities they touch and shrinks |E| by
/// deg(v); the community structure itself stays fixed. Each query costs
/// O(deg(v) * memberships) and queries are independent, so evaluate() runs
/// them in parallel.
///
/// The engine keeps references to the graph and cover; both must outlive it.
class VitalityEngine {
 public:
  static VitalityEngine crisp(const Graph& g, const Partition& p);
  static VitalityEngine fuzzy(const Graph& g, const Cover& c);

  double base_modularity() const noexcept { return base_q_; }

  /// Modularity of g with v and its edges removed; NaN when no edge remains.
  double modularity_without(NodeId v) const;

  /// Q(g) - Q(g \ {v}); NaN when undefined.
  double vitality(NodeId v) const { return base_q_ - modularity_without(v); }

  /// Vitality of every node, in node order. threads <= 0 uses the OpenMP default.
  std::vector<double> evaluate(int threads = 0) const;

 private:
  VitalityEngine(const Graph& g, const Cover& c, CommunityTally base);

  struct Scratch {
    std::vector<double> d_intra;
    std::vector<double> d_inter;
    std::vector<char> marked;
    std::vector<CommunityId> touched;
  };
  double modularity_without(NodeId v, Scratch& s) const;

  const Graph* g_;
  const Cover* c_;
  CommunityTally tally_;
  double s1_ = 0.0;
  double s2_ = 0.0;
  double base_q_ = 0.0;
};

/// Modularity vitality on a crisp partition, tagged "mv".
ScoreVector modularity_vitality(const Graph& g, const Partition& p, int threads = 0);
/// Overlapping modularity vitality on a cover, tagged "omv".
ScoreVector overlapping_modularity_vitality(const Graph& g, const Cover& c, int threads = 0);

/// Serial full-recompute implementations: every node is physically deleted
/// and the modularity recomputed from scratch. O(N |E|); kept as the
/// reference the incremental engine is tested and benchmarked against.
namespace reference {

double modularity_without(const Graph& g, const Partition& p, NodeId v);
double overlapping_modularity_without(const Graph& g, const Cover& c, NodeId v);

ScoreVector modularity_vitality(const Graph& g, const Partition& p);
ScoreVector overlapping_modularity_vitality(const Graph& g, const Cover& c);

}  // namespace reference

}  // namespace omv

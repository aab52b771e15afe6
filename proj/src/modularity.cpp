#include "omv/modularity.hpp"

#include "omv/error.hpp"

namespace omv {

namespace {

void check_sizes(const Graph& g, std::size_t cover_nodes) {
  if (cover_nodes != g.node_count())
    throw Error(ErrorKind::Consistency, "community assignment covers " + std::to_string(cover_nodes) +
                                            " nodes but the graph has " +
                                            std::to_string(g.node_count()));
}

}  // namespace

CommunityTally crisp_tallies(const Graph& g, const Partition& p) {
  check_sizes(g, p.node_count());
  CommunityTally t;
  t.intra.assign(p.community_count(), 0.0);
  t.inter.assign(p.community_count(), 0.0);
  t.total_edges = static_cast<double>(g.edge_count());
  // integer counts, exact in double far beyond any realistic edge count
  for (NodeId u = 0; u < g.node_count(); ++u) {
    CommunityId cu = p.community_of(u);
    for (NodeId v : g.neighbors(u)) {
      if (p.community_of(v) != cu) t.inter[cu] += 1.0;
      else if (u < v) t.intra[cu] += 1.0;
    }
  }
  return t;
}

CommunityTally fuzzy_tallies(const Graph& g, const Cover& c) {
  check_sizes(g, c.node_count());
  const std::size_t k = c.community_count();
  std::vector<CompensatedSum> intra(k), inter(k);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const double a_i = c.coefficient(i);
    for (NodeId j : g.neighbors(i)) {
      const bool j_single = c.membership_count(j) == 1;
      for (CommunityId ck : c.memberships(i)) {
        const double a_j = c.belonging(j, ck);
        if (a_j > 0.0 && i < j) intra[ck].add((a_i + a_j) / 2.0);
        // j must belong to some community other than ck
        if (!(j_single && a_j > 0.0)) inter[ck].add((a_i + (1.0 - a_j)) / 2.0);
      }
    }
  }
  CommunityTally t;
  t.intra.resize(k);
  t.inter.resize(k);
  for (std::size_t x = 0; x < k; ++x) {
    t.intra[x] = intra[x].value();
    t.inter[x] = inter[x].value();
  }
  t.total_edges = static_cast<double>(g.edge_count());
  return t;
}

double modularity_from_tally(const CommunityTally& t) {
  if (t.total_edges <= 0.0)
    throw Error(ErrorKind::UndefinedModularity, "modularity is undefined on a graph without edges");
  const double m = t.total_edges;
  CompensatedSum q;
  for (std::size_t x = 0; x < t.size(); ++x) {
    const double share = t.endpoint_mass(x) / (2.0 * m);
    q.add(t.intra[x] / m);
    q.add(-share * share);
  }
  return q.value();
}

double newman_modularity(const Graph& g, const Partition& p) {
  return modularity_from_tally(crisp_tallies(g, p));
}

double overlapping_modularity(const Graph& g, const Cover& c) {
  return modularity_from_tally(fuzzy_tallies(g, c));
}

}  // namespace omv

#include "omv/vitality.hpp"

#include <limits>

#include "omv/error.hpp"

namespace omv {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double modularity_from_aggregates(double s1, double s2, double m) {
  return s1 / m - s2 / (4.0 * m * m);
}
}  // namespace

VitalityEngine::VitalityEngine(const Graph& g, const Cover& c, CommunityTally base)
    : g_(&g), c_(&c), tally_(std::move(base)) {
  if (tally_.total_edges <= 0.0)
    throw Error(ErrorKind::UndefinedModularity, "modularity is undefined on a graph without edges");
  CompensatedSum s1, s2;
  for (std::size_t k = 0; k < tally_.size(); ++k) {
    const double d = tally_.endpoint_mass(k);
    s1.add(tally_.intra[k]);
    s2.add(d * d);
  }
  s1_ = s1.value();
  s2_ = s2.value();
  base_q_ = modularity_from_aggregates(s1_, s2_, tally_.total_edges);
}

VitalityEngine VitalityEngine::crisp(const Graph& g, const Partition& p) {
  return VitalityEngine(g, p.cover(), crisp_tallies(g, p));
}

VitalityEngine VitalityEngine::fuzzy(const Graph& g, const Cover& c) {
  return VitalityEngine(g, c, fuzzy_tallies(g, c));
}

double VitalityEngine::modularity_without(NodeId v) const {
  Scratch s;
  return modularity_without(v, s);
}

double VitalityEngine::modularity_without(NodeId v, Scratch& s) const {
  const Graph& g = *g_;
  const Cover& c = *c_;
  const double m = tally_.total_edges - static_cast<double>(g.degree(v));
  if (m <= 0.0) return kNaN;

  if (s.d_intra.size() != tally_.size()) {
    s.d_intra.assign(tally_.size(), 0.0);
    s.d_inter.assign(tally_.size(), 0.0);
    s.marked.assign(tally_.size(), 0);
  }
  auto touch = [&](CommunityId k) {
    if (!s.marked[k]) {
      s.marked[k] = 1;
      s.touched.push_back(k);
    }
  };

  // Mirror of fuzzy_tallies restricted to the edges incident to v.
  const double a_v = c.coefficient(v);
  const bool v_single = c.membership_count(v) == 1;
  for (NodeId u : g.neighbors(v)) {
    const double a_u = c.coefficient(u);
    const bool u_single = c.membership_count(u) == 1;
    for (CommunityId k : c.memberships(v)) {
      const double a_uk = c.belonging(u, k);
      touch(k);
      if (a_uk > 0.0) s.d_intra[k] += (a_v + a_uk) / 2.0;
      if (!(u_single && a_uk > 0.0)) s.d_inter[k] += (a_v + (1.0 - a_uk)) / 2.0;
    }
    for (CommunityId k : c.memberships(u)) {
      const double a_vk = c.belonging(v, k);
      if (!(v_single && a_vk > 0.0)) {
        touch(k);
        s.d_inter[k] += (a_u + (1.0 - a_vk)) / 2.0;
      }
    }
  }

  double d_s1 = 0.0;
  double d_s2 = 0.0;
  for (CommunityId k : s.touched) {
    const double di = s.d_intra[k];
    const double dd = 2.0 * di + s.d_inter[k];
    const double d = tally_.endpoint_mass(k);
    d_s1 += di;
    // (d - dd)^2 - d^2, factored to avoid cancellation against S2
    d_s2 += -dd * (2.0 * d - dd);
    s.d_intra[k] = 0.0;
    s.d_inter[k] = 0.0;
    s.marked[k] = 0;
  }
  s.touched.clear();
  return modularity_from_aggregates(s1_ - d_s1, s2_ + d_s2, m);
}

std::vector<double> VitalityEngine::evaluate(int threads) const {
  const auto n = static_cast<std::int64_t>(g_->node_count());
  std::vector<double> out(static_cast<std::size_t>(n));
  const int team = threads > 0 ? threads : 0;
#pragma omp parallel num_threads(team) if (team != 1)
  {
    Scratch s;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t v = 0; v < n; ++v)
      out[static_cast<std::size_t>(v)] = base_q_ - modularity_without(static_cast<NodeId>(v), s);
  }
  return out;
}

ScoreVector modularity_vitality(const Graph& g, const Partition& p, int threads) {
  return {"mv", VitalityEngine::crisp(g, p).evaluate(threads)};
}

ScoreVector overlapping_modularity_vitality(const Graph& g, const Cover& c, int threads) {
  return {"omv", VitalityEngine::fuzzy(g, c).evaluate(threads)};
}

namespace reference {

namespace {
std::vector<bool> all_but(std::size_t n, NodeId v) {
  std::vector<bool> keep(n, true);
  keep[v] = false;
  return keep;
}
}  // namespace

double modularity_without(const Graph& g, const Partition& p, NodeId v) {
  auto keep = all_but(g.node_count(), v);
  Graph sub = g.induced(keep);
  if (sub.edge_count() == 0) return kNaN;
  return newman_modularity(sub, Partition::from_cover(p.cover().restricted(keep)));
}

double overlapping_modularity_without(const Graph& g, const Cover& c, NodeId v) {
  auto keep = all_but(g.node_count(), v);
  Graph sub = g.induced(keep);
  if (sub.edge_count() == 0) return kNaN;
  return overlapping_modularity(sub, c.restricted(keep));
}

ScoreVector modularity_vitality(const Graph& g, const Partition& p) {
  const double q = newman_modularity(g, p);
  ScoreVector s{"mv", std::vector<double>(g.node_count())};
  for (NodeId v = 0; v < g.node_count(); ++v) s.values[v] = q - modularity_without(g, p, v);
  return s;
}

ScoreVector overlapping_modularity_vitality(const Graph& g, const Cover& c) {
  const double q = overlapping_modularity(g, c);
  ScoreVector s{"omv", std::vector<double>(g.node_count())};
  for (NodeId v = 0; v < g.node_count(); ++v) s.values[v] = q - overlapping_modularity_without(g, c, v);
  return s;
}

}  // namespace reference

}  // namespace omv

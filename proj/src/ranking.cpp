#include "omv/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "omv/error.hpp"

namespace omv {

std::string_view short_name(Strategy s) {
  switch (s) {
    case Strategy::PositiveFirst: return "pos";
    case Strategy::NegativeFirst: return "neg";
    case Strategy::Absolute: return "abs";
  }
  return "?";
}

std::string_view long_name(Strategy s) {
  switch (s) {
    case Strategy::PositiveFirst: return "positive_first";
    case Strategy::NegativeFirst: return "negative_first";
    case Strategy::Absolute: return "absolute";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  for (auto s : {Strategy::PositiveFirst, Strategy::NegativeFirst, Strategy::Absolute})
    if (text == short_name(s) || text == long_name(s)) return s;
  return std::nullopt;
}

namespace {

Ranking rank_impl(const ScoreVector& scores, Strategy strategy, std::span<const std::size_t> degrees) {
  if (scores.values.empty()) throw Error(ErrorKind::Parameter, "cannot rank an empty score vector");
  const auto& x = scores.values;
  auto key = [&](NodeId v) {
    switch (strategy) {
      case Strategy::PositiveFirst: return x[v];
      case Strategy::NegativeFirst: return -x[v];
      case Strategy::Absolute: return std::abs(x[v]);
    }
    return x[v];
  };
  Ranking r{strategy, scores.measure, std::vector<NodeId>(x.size())};
  std::iota(r.order.begin(), r.order.end(), 0);
  std::sort(r.order.begin(), r.order.end(), [&](NodeId a, NodeId b) {
    const bool da = ScoreVector::defined(x[a]);
    const bool db = ScoreVector::defined(x[b]);
    if (da != db) return da;
    if (da) {
      const double ka = key(a), kb = key(b);
      if (ka != kb) return ka > kb;
    }
    if (!degrees.empty() && degrees[a] != degrees[b]) return degrees[a] > degrees[b];
    return a < b;
  });
  return r;
}

}  // namespace

Ranking rank(const ScoreVector& scores, Strategy strategy, const Graph& g) {
  if (scores.size() != g.node_count())
    throw Error(ErrorKind::Consistency, "score vector size does not match the graph");
  std::vector<std::size_t> deg(g.node_count());
  for (NodeId v = 0; v < deg.size(); ++v) deg[v] = g.degree(v);
  return rank_impl(scores, strategy, deg);
}

Ranking rank(const ScoreVector& scores, Strategy strategy) {
  return rank_impl(scores, strategy, {});
}

std::size_t seed_count(double f, std::size_t n) {
  if (!(f > 0.0 && f <= 1.0)) throw Error(ErrorKind::Parameter, "fraction must lie in (0, 1]");
  // shave representation error so that e.g. 0.1 * 30 does not round up to 4
  const double exact = f * static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::ceil(exact - 1e-9 * std::max(1.0, exact)));
  return std::min(n, std::max<std::size_t>(k, n == 0 ? 0 : 1));
}

std::vector<NodeId> top_fraction(const Ranking& r, double f, std::size_t n) {
  const std::size_t k = std::min(seed_count(f, n), r.order.size());
  return {r.order.begin(), r.order.begin() + static_cast<std::ptrdiff_t>(k)};
}

}  // namespace omv

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omv/graph.hpp"
#include "omv/scores.hpp"

namespace omv {

enum class Strategy { PositiveFirst, NegativeFirst, Absolute };

/// Short CLI names: "pos", "neg", "abs".
std::string_view short_name(Strategy s);
/// Long names: "positive_first", "negative_first", "absolute".
std::string_view long_name(Strategy s);
/// Accepts either the short or the long name.
std::optional<Strategy> parse_strategy(std::string_view text);

struct Ranking {
  Strategy strategy = Strategy::PositiveFirst;
  std::string source_measure;
  std::vector<NodeId> order;
};

/// Orders nodes by the strategy's key. Equal keys fall back to higher degree,
/// then smaller node id. Undefined (NaN) scores always come last.
Ranking rank(const ScoreVector& scores, Strategy strategy, const Graph& g);
/// Same, without degree information: equal keys fall back to node id.
Ranking rank(const ScoreVector& scores, Strategy strategy);

/// First ceil(f * n) nodes of the ranking, f in (0, 1].
std::vector<NodeId> top_fraction(const Ranking& r, double f, std::size_t n);
std::size_t seed_count(double f, std::size_t n);

}  // namespace omv

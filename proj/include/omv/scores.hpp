#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "omv/graph.hpp"

namespace omv {

/// Signed per-node scores tagged with the measure that produced them.
/// NaN marks a score that is undefined for that node.
struct ScoreVector {
  std::string measure;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  static bool defined(double x) noexcept { return !std::isnan(x); }
};

ScoreVector degree_scores(const Graph& g);

}  // namespace omv

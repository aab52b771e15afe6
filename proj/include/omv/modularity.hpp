#pragma once

#include <cmath>
#include <vector>

#include "omv/community.hpp"
#include "omv/graph.hpp"

namespace omv {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
    else comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Per-community intra and inter edge masses. For a crisp partition these
/// are plain edge counts; for a cover they are belonging-weighted.
struct CommunityTally {
  std::vector<double> intra;
  std::vector<double> inter;
  double total_edges = 0.0;

  std::size_t size() const noexcept { return intra.size(); }
  /// 2*intra + inter: the community's share of edge endpoints.
  double endpoint_mass(std::size_t k) const { return 2.0 * intra[k] + inter[k]; }
};

CommunityTally crisp_tallies(const Graph& g, const Partition& p);
CommunityTally fuzzy_tallies(const Graph& g, const Cover& c);

/// sum_k [ intra_k/|E| - ((2 intra_k + inter_k) / 2|E|)^2 ].
/// Throws when the tally covers no edges.
double modularity_from_tally(const CommunityTally& t);

double newman_modularity(const Graph& g, const Partition& p);
double overlapping_modularity(const Graph& g, const Cover& c);

}  // namespace omv

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "omv/graph.hpp"
#include "omv/random.hpp"
#include "omv/ranking.hpp"
#include "omv/scores.hpp"

namespace omv {

struct SirParams {
  double infection_prob = 0.0;  // lambda
  double recovery_prob = 1.0;   // gamma
  int runs = 100;
  std::uint64_t seed = 1;
};

void validate(const SirParams& p);

/// One synchronous discrete-time SIR run driven by rng. Each step every
/// infected node tries each susceptible neighbour with probability lambda
/// (new infections become active next step), then every node that was
/// infected at the start of the step recovers with probability gamma.
/// Returns the number of recovered nodes at absorption.
std::size_t sir_run(const Graph& g, std::span<const NodeId> seeds, double infection_prob,
                    double recovery_prob, CounterRng& rng);

/// Stream key for run `run_index` within stream group `tag`.
inline std::uint64_t sir_stream(std::uint64_t master_seed, std::uint64_t tag, std::uint64_t run_index) {
  return stream_key({master_seed, tag, run_index});
}

/// Run `run_index` of the default stream group (tag 0).
std::size_t sir_run(const Graph& g, std::span<const NodeId> seeds, const SirParams& params,
                    std::uint64_t run_index);

struct SirOutcome {
  std::vector<std::size_t> outbreak_sizes;
  double mean_outbreak = 0.0;
};

/// params.runs independent runs on streams (seed, tag, run). Output does
/// not depend on the thread count.
SirOutcome sir_mean(const Graph& g, std::span<const NodeId> seeds, const SirParams& params,
                    std::uint64_t tag = 0, int threads = 0);

/// Heterogeneous mean-field threshold <k> / (<k^2> - <k>).
double epidemic_threshold(const Graph& g);

/// (r_c - r_b) / r_b; throws when r_b <= 0.
double relative_outbreak_difference(double r_c, double r_b);

struct SweepMeasure {
  ScoreVector scores;
  Strategy strategy = Strategy::PositiveFirst;
};

struct SweepSeries {
  std::string measure;
  Strategy strategy = Strategy::PositiveFirst;
  std::vector<double> r_mean;                          // per f0
  std::vector<double> delta_r;                         // per f0
  std::vector<std::vector<std::size_t>> outbreaks;     // per f0, per run
};

struct SweepResult {
  std::vector<double> f_grid;
  SirParams params;
  std::vector<double> baseline_mean;                   // per f0
  std::vector<std::vector<std::size_t>> baseline_outbreaks;
  std::vector<SweepSeries> series;
};

/// For every f0 and measure, seeds the top fraction of the measure's ranking
/// and compares the mean outbreak with that of the positive-first baseline
/// ranking. Every seed set at grid index i uses the streams (seed, i, run),
/// so measures and baseline share random numbers run by run.
SweepResult sweep(const Graph& g, std::span<const SweepMeasure> measures, const ScoreVector& baseline,
                  std::span<const double> f_grid, const SirParams& params, int threads = 0);

/// Values start, start+step, ... up to stop (inclusive within rounding).
std::vector<double> make_grid(double start, double stop, double step);

}  // namespace omv

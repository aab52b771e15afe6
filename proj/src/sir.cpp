#include "omv/sir.hpp"

#include <algorithm>
#include <cmath>

#include "omv/error.hpp"

namespace omv {

void validate(const SirParams& p) {
  if (!(p.infection_prob >= 0.0 && p.infection_prob <= 1.0))
    throw Error(ErrorKind::Parameter, "infection probability must lie in [0, 1]");
  if (!(p.recovery_prob > 0.0 && p.recovery_prob <= 1.0))
    throw Error(ErrorKind::Parameter, "recovery probability must lie in (0, 1]");
  if (p.runs < 1) throw Error(ErrorKind::Parameter, "at least one run is required");
}

namespace {

enum : std::uint8_t { kSusceptible = 0, kInfected = 1, kRecovered = 2 };

struct SirScratch {
  std::vector<std::uint8_t> state;
  std::vector<NodeId> infected;
  std::vector<NodeId> next;
};

std::size_t run_kernel(const Graph& g, std::span<const NodeId> seeds, double lambda, double gamma,
                       CounterRng& rng, SirScratch& s) {
  s.state.assign(g.node_count(), kSusceptible);
  s.infected.clear();
  for (NodeId v : seeds) {
    if (s.state[v] == kSusceptible) {
      s.state[v] = kInfected;
      s.infected.push_back(v);
    }
  }
  std::size_t recovered = 0;
  while (!s.infected.empty()) {
    s.next.clear();
    for (NodeId v : s.infected) {
      for (NodeId u : g.neighbors(v)) {
        if (s.state[u] != kSusceptible) continue;
        if (uniform01(rng) < lambda) {
          s.state[u] = kInfected;
          s.next.push_back(u);
        }
      }
    }
    // nodes infected this step sit in `next` and skip this recovery round
    for (NodeId v : s.infected) {
      if (uniform01(rng) < gamma) {
        s.state[v] = kRecovered;
        ++recovered;
      } else {
        s.next.push_back(v);
      }
    }
    std::swap(s.infected, s.next);
  }
  return recovered;
}

void check_seeds(const Graph& g, std::span<const NodeId> seeds) {
  if (seeds.empty()) throw Error(ErrorKind::Parameter, "seed set is empty");
  for (NodeId v : seeds)
    if (v >= g.node_count()) throw Error(ErrorKind::NodeId, "seed id out of range");
}

}  // namespace

std::size_t sir_run(const Graph& g, std::span<const NodeId> seeds, double infection_prob,
                    double recovery_prob, CounterRng& rng) {
  check_seeds(g, seeds);
  SirScratch s;
  return run_kernel(g, seeds, infection_prob, recovery_prob, rng, s);
}

std::size_t sir_run(const Graph& g, std::span<const NodeId> seeds, const SirParams& params,
                    std::uint64_t run_index) {
  validate(params);
  CounterRng rng(sir_stream(params.seed, 0, run_index));
  return sir_run(g, seeds, params.infection_prob, params.recovery_prob, rng);
}

SirOutcome sir_mean(const Graph& g, std::span<const NodeId> seeds, const SirParams& params,
                    std::uint64_t tag, int threads) {
  validate(params);
  check_seeds(g, seeds);
  SirOutcome out;
  out.outbreak_sizes.resize(static_cast<std::size_t>(params.runs));
  const int team = threads > 0 ? threads : 0;
#pragma omp parallel num_threads(team) if (team != 1)
  {
    SirScratch s;
#pragma omp for schedule(static)
    for (int r = 0; r < params.runs; ++r) {
      CounterRng rng(sir_stream(params.seed, tag, static_cast<std::uint64_t>(r)));
      out.outbreak_sizes[static_cast<std::size_t>(r)] =
          run_kernel(g, seeds, params.infection_prob, params.recovery_prob, rng, s);
    }
  }
  std::size_t total = 0;
  for (auto r : out.outbreak_sizes) total += r;
  out.mean_outbreak = static_cast<double>(total) / static_cast<double>(params.runs);
  return out;
}

double epidemic_threshold(const Graph& g) {
  if (g.empty()) throw Error(ErrorKind::EmptyGraph, "graph has no nodes");
  std::uint64_t k1 = 0, k2 = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::uint64_t k = g.degree(v);
    k1 += k;
    k2 += k * k;
  }
  // <k^2> > <k>  <=>  sum k^2 > sum k, compared exactly on integers
  if (k2 <= k1)
    throw Error(ErrorKind::UndefinedThreshold, "epidemic threshold undefined: <k^2> <= <k>");
  return static_cast<double>(k1) / static_cast<double>(k2 - k1);
}

double relative_outbreak_difference(double r_c, double r_b) {
  if (!(r_b > 0.0))
    throw Error(ErrorKind::UndefinedBaseline, "baseline outbreak size must be positive");
  return (r_c - r_b) / r_b;
}

SweepResult sweep(const Graph& g, std::span<const SweepMeasure> measures, const ScoreVector& baseline,
                  std::span<const double> f_grid, const SirParams& params, int threads) {
  validate(params);
  if (f_grid.empty()) throw Error(ErrorKind::Parameter, "f0 grid is empty");
  for (double f : f_grid)
    if (!(f > 0.0 && f <= 1.0)) throw Error(ErrorKind::Parameter, "f0 values must lie in (0, 1]");

  const std::size_t n = g.node_count();
  const std::size_t nf = f_grid.size();
  const std::size_t runs = static_cast<std::size_t>(params.runs);

  // Seed sets: slot 0 is the baseline, slot s+1 is measure s.
  std::vector<Ranking> rankings;
  rankings.push_back(rank(baseline, Strategy::PositiveFirst, g));
  for (const auto& m : measures) rankings.push_back(rank(m.scores, m.strategy, g));
  const std::size_t slots = rankings.size();
  std::vector<std::vector<NodeId>> seed_sets(slots * nf);
  for (std::size_t s = 0; s < slots; ++s)
    for (std::size_t i = 0; i < nf; ++i) seed_sets[s * nf + i] = top_fraction(rankings[s], f_grid[i], n);

  const auto tasks = static_cast<std::int64_t>(slots * nf * runs);
  std::vector<std::size_t> outbreak(static_cast<std::size_t>(tasks));
  const int team = threads > 0 ? threads : 0;
#pragma omp parallel num_threads(team) if (team != 1)
  {
    SirScratch scratch;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t t = 0; t < tasks; ++t) {
      const auto task = static_cast<std::size_t>(t);
      const std::size_t set = task / runs;
      const std::size_t run = task % runs;
      const std::size_t fi = set % nf;
      CounterRng rng(sir_stream(params.seed, fi, run));
      outbreak[task] = run_kernel(g, seed_sets[set], params.infection_prob, params.recovery_prob, rng, scratch);
    }
  }

  auto collect = [&](std::size_t set, std::vector<std::size_t>& runs_out) {
    runs_out.assign(outbreak.begin() + static_cast<std::ptrdiff_t>(set * runs),
                    outbreak.begin() + static_cast<std::ptrdiff_t>((set + 1) * runs));
    std::size_t total = 0;
    for (auto r : runs_out) total += r;
    return static_cast<double>(total) / static_cast<double>(runs);
  };

  SweepResult res;
  res.f_grid.assign(f_grid.begin(), f_grid.end());
  res.params = params;
  res.baseline_mean.resize(nf);
  res.baseline_outbreaks.resize(nf);
  for (std::size_t i = 0; i < nf; ++i) res.baseline_mean[i] = collect(i, res.baseline_outbreaks[i]);
  for (std::size_t s = 0; s < measures.size(); ++s) {
    SweepSeries series;
    series.measure = measures[s].scores.measure;
    series.strategy = measures[s].strategy;
    series.r_mean.resize(nf);
    series.delta_r.resize(nf);
    series.outbreaks.resize(nf);
    for (std::size_t i = 0; i < nf; ++i) {
      series.r_mean[i] = collect((s + 1) * nf + i, series.outbreaks[i]);
      series.delta_r[i] = relative_outbreak_difference(series.r_mean[i], res.baseline_mean[i]);
    }
    res.series.push_back(std::move(series));
  }
  return res;
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start))
    throw Error(ErrorKind::Parameter, "grid needs step > 0 and stop >= start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    // round to 12 decimals so 0.01 + 2*0.01 prints as 0.03
    grid[i] = std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12;
  }
  return grid;
}

}  // namespace omv

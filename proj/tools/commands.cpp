#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "omv/community.hpp"
#include "omv/error.hpp"
#include "omv/graph.hpp"
#include "omv/io.hpp"
#include "omv/modularity.hpp"
#include "omv/ranking.hpp"
#include "omv/sir.hpp"
#include "omv/vitality.hpp"

namespace omv::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

struct Options {
  std::string edges;
  std::string cover;
  std::string partition;
  std::string measure = "omv";
  std::vector<std::string> strategies;
  std::vector<std::string> score_files;
  std::optional<double> lambda;
  double gamma = 1.0;
  int runs = 100;
  std::string fgrid = "0.01:0.30:0.01";
  int slpa_t = 100;
  double slpa_r = 0.01;
  std::uint64_t seed = kDefaultSeed;
  std::string out_dir;
  int threads = 0;
  bool verify = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fixed6(double x) {
  if (std::isnan(x)) return "nan";
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(6) << x;
  return ss.str();
}

Graph load_graph(const Options& o, ordered_json& manifest, std::ostream& err) {
  if (o.edges.empty()) throw UsageError("--edges is required");
  LoadDiagnostics diag;
  Graph g = load_edge_list_file(o.edges, &diag);
  if (diag.self_loops_dropped || diag.duplicate_edges_merged)
    err << "note: dropped " << diag.self_loops_dropped << " self-loops, merged "
        << diag.duplicate_edges_merged << " duplicate edges\n";
  manifest["inputs"]["edges"] = {{"path", o.edges},
                                 {"graph_hash", graph_hash(g)},
                                 {"nodes", g.node_count()},
                                 {"edges", g.edge_count()},
                                 {"self_loops_dropped", diag.self_loops_dropped},
                                 {"duplicates_merged", diag.duplicate_edges_merged}};
  return g;
}

fs::path output_dir(const Options& o) {
  if (o.out_dir.empty()) throw UsageError("--out is required");
  fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory '" + o.out_dir + "'");
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  write_atomically(path, [&](std::ostream& os) { os << text; });
}

void write_manifest(const fs::path& dir, const ordered_json& manifest) {
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

ordered_json base_manifest(const std::string& command, int argc, const char* const* argv) {
  ordered_json m;
  m["tool"] = "omv";
  m["command"] = command;
  auto args = ordered_json::array();
  for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
  m["argv"] = std::move(args);
  return m;
}

// ---------------------------------------------------------------- stats

int cmd_stats(const Options& o, ordered_json manifest, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(o, manifest, err);
  auto ts = topology_stats(g);
  ordered_json report;
  report["N"] = ts.n;
  report["E"] = ts.m;
  report["avg_degree"] = ts.avg_degree;
  report["transitivity"] = ts.transitivity;
  out << "N\t" << ts.n << "\nE\t" << ts.m << "\navg_degree\t" << fixed6(ts.avg_degree)
      << "\ntransitivity\t" << fixed6(ts.transitivity) << '\n';

  std::optional<Partition> partition;
  if (!o.partition.empty()) partition = load_partition_file(o.partition, g);
  if (!o.cover.empty()) {
    Cover c = load_cover_file(o.cover, g);
    manifest["inputs"]["cover"] = {{"path", o.cover}, {"cover_hash", cover_hash(c)}};
    if (!partition) partition = collapse_to_partition(c);
    auto cs = cover_stats(c);
    const double qo = overlapping_modularity(g, c);
    out << "Q_o\t" << fixed6(qo) << "\non\t" << fixed6(cs.overlap_fraction) << "\nm\t"
        << fixed6(cs.avg_memberships) << "\ncommunities\t" << cs.community_count << '\n';
    report["Q_o"] = qo;
    report["overlap_fraction"] = cs.overlap_fraction;
    report["avg_memberships"] = cs.avg_memberships;
    report["communities"] = cs.community_count;
  }
  if (partition) {
    const double q = newman_modularity(g, *partition);
    out << "Q\t" << fixed6(q) << '\n';
    report["Q"] = q;
    report["Q_partition_source"] = o.partition.empty() ? "collapsed cover" : "partition file";
  }
  if (!o.out_dir.empty()) {
    auto dir = output_dir(o);
    write_text(dir / "stats.json", report.dump(2) + "\n");
    manifest["outputs"] = {"stats.json"};
    write_manifest(dir, manifest);
  }
  return kOk;
}

// ---------------------------------------------------------------- lcc

int cmd_lcc(const Options& o, ordered_json manifest, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(o, manifest, err);
  Graph lcc = largest_connected_component(g);
  auto dir = output_dir(o);
  write_atomically(dir / "lcc.edges", [&](std::ostream& os) { save_edge_list(lcc, os); });
  manifest["outputs"] = {"lcc.edges"};
  manifest["result"] = {{"nodes", lcc.node_count()}, {"edges", lcc.edge_count()}, {"graph_hash", graph_hash(lcc)}};
  write_manifest(dir, manifest);
  out << "lcc\t" << lcc.node_count() << " nodes\t" << lcc.edge_count() << " edges\n";
  return kOk;
}

// ---------------------------------------------------------------- detect

int cmd_detect(const Options& o, ordered_json manifest, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(o, manifest, err);
  auto dir = output_dir(o);
  SlpaParams p{o.slpa_t, o.slpa_r, o.seed};
  Cover c = slpa_detect(g, p);
  Partition part = collapse_to_partition(c);
  write_atomically(dir / "cover.tsv", [&](std::ostream& os) { save_cover(os, c, g); });
  write_atomically(dir / "partition.tsv", [&](std::ostream& os) { save_partition(os, part, g); });
  auto cs = cover_stats(c);
  manifest["parameters"] = {{"slpa_T", p.iterations}, {"slpa_r", p.threshold}, {"seed", p.seed}};
  manifest["outputs"] = {"cover.tsv", "partition.tsv"};
  manifest["result"] = {{"cover_hash", cover_hash(c)},
                        {"communities", cs.community_count},
                        {"overlap_fraction", cs.overlap_fraction},
                        {"avg_memberships", cs.avg_memberships}};
  write_manifest(dir, manifest);
  out << "communities\t" << cs.community_count << "\non\t" << fixed6(cs.overlap_fraction) << "\nm\t"
      << fixed6(cs.avg_memberships) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- score

int cmd_score(const Options& o, ordered_json manifest, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(o, manifest, err);
  auto dir = output_dir(o);
  std::optional<Cover> cover;
  std::optional<Partition> partition;
  if (!o.cover.empty()) cover = load_cover_file(o.cover, g);
  if (!o.partition.empty()) partition = load_partition_file(o.partition, g);

  ScoreVector scores;
  std::string community_hash;
  const Cover* used_cover = nullptr;
  std::optional<Partition> collapsed;
  if (o.measure == "degree") {
    scores = degree_scores(g);
  } else if (o.measure == "mv") {
    if (!partition) {
      if (!cover) throw UsageError("measure mv needs --partition or --cover");
      collapsed = collapse_to_partition(*cover);
      manifest["notes"].push_back("mv computed on the cover collapsed to its max-belonging partition");
      partition = *collapsed;
    }
    used_cover = &partition->cover();
    scores = modularity_vitality(g, *partition, o.threads);
  } else if (o.measure == "omv") {
    if (!cover) {
      if (!partition) throw UsageError("measure omv needs --cover or --partition");
      cover = partition->cover();
    }
    used_cover = &*cover;
    scores = overlapping_modularity_vitality(g, *cover, o.threads);
  } else {
    throw UsageError("unknown measure '" + o.measure + "' (expected mv, omv or degree)");
  }
  if (used_cover) community_hash = cover_hash(*used_cover);

  if (o.verify && used_cover) {
    // full recompute on ~1% of nodes, evenly spread and offset by the seed
    const std::size_t n = g.node_count();
    const std::size_t k = std::max<std::size_t>(1, (n + 99) / 100);
    const std::size_t stride = std::max<std::size_t>(1, n / k);
    const double q0 = o.measure == "mv" ? newman_modularity(g, *partition) : overlapping_modularity(g, *cover);
    double worst = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      auto v = static_cast<NodeId>((o.seed + i * stride) % n);
      const double q1 = o.measure == "mv" ? reference::modularity_without(g, *partition, v)
                                          : reference::overlapping_modularity_without(g, *cover, v);
      const double ref = q0 - q1;
      const double got = scores.values[v];
      if (std::isnan(ref) != std::isnan(got)) worst = INFINITY;
      else if (!std::isnan(ref)) worst = std::max(worst, std::abs(ref - got));
    }
    manifest["verification"] = {{"nodes_checked", k}, {"max_abs_error", worst}, {"tolerance", 1e-10}};
    err << "verify: " << k << " nodes, max |incremental - recompute| = " << worst << '\n';
    if (!(worst <= 1e-10)) {
      err << "error: incremental scores disagree with full recomputation\n";
      return kNumericError;
    }
  }

  std::size_t undefined = 0;
  for (double x : scores.values)
    if (std::isnan(x)) ++undefined;
  if (undefined) err << "note: " << undefined << " node(s) have undefined vitality (written as nan)\n";

  const std::string name = "scores_" + scores.measure + ".tsv";
  ScoreFileHeader header{scores.measure, graph_hash(g), community_hash};
  write_atomically(dir / name, [&](std::ostream& os) { save_scores(os, scores, g, header); });
  manifest["parameters"] = {{"measure", o.measure}, {"threads", o.threads}, {"verify", o.verify}};
  if (cover && o.measure != "mv") manifest["inputs"]["cover"] = {{"path", o.cover}, {"cover_hash", cover_hash(*cover)}};
  if (!o.partition.empty()) manifest["inputs"]["partition"] = {{"path", o.partition}};
  manifest["outputs"] = {name};
  manifest["result"] = {{"undefined_scores", undefined}};
  write_manifest(dir, manifest);
  out << "wrote\t" << (dir / name).string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------- rank

std::vector<Strategy> strategies_of(const Options& o) {
  std::vector<Strategy> out;
  if (o.strategies.empty()) return {Strategy::PositiveFirst, Strategy::NegativeFirst, Strategy::Absolute};
  for (const auto& s : o.strategies) {
    auto parsed = parse_strategy(s);
    if (!parsed) throw UsageError("unknown strategy '" + s + "' (expected pos, neg or abs)");
    out.push_back(*parsed);
  }
  return out;
}

int cmd_rank(const Options& o, ordered_json manifest, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(o, manifest, err);
  if (o.score_files.empty()) throw UsageError("--scores is required");
  auto dir = output_dir(o);
  auto outputs = ordered_json::array();
  for (const auto& path : o.score_files) {
    ScoreVector s = load_scores_file(path, g);
    for (Strategy st : strategies_of(o)) {
      Ranking r = rank(s, st, g);
      std::string name = "ranking_" + s.measure + "_" + std::string(short_name(st)) + ".tsv";
      write_atomically(dir / name, [&](std::ostream& os) { save_ranking(os, r, s, g); });
      outputs.push_back(name);
      out << "wrote\t" << (dir / name).string() << '\n';
    }
  }
  manifest["inputs"]["scores"] = o.score_files;
  manifest["outputs"] = std::move(outputs);
  write_manifest(dir, manifest);
  return kOk;
}

// ---------------------------------------------------------------- sweep

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(':', pos);
    if (end == std::string::npos) end = text.size();
    try {
      parts.push_back(parse_double(std::string_view(text).substr(pos, end - pos)));
    } catch (const Error&) {
      throw UsageError("--fgrid expects START:STOP:STEP, got '" + text + "'");
    }
    pos = end + 1;
  }
  if (parts.size() != 3) throw UsageError("--fgrid expects START:STOP:STEP, got '" + text + "'");
  return make_grid(parts[0], parts[1], parts[2]);
}

int cmd_sweep(const Options& o, ordered_json manifest, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(o, manifest, err);
  auto grid = parse_grid(o.fgrid);
  auto strategies = strategies_of(o);
  auto dir = output_dir(o);

  SirParams params;
  params.recovery_prob = o.gamma;
  params.runs = o.runs;
  params.seed = o.seed;
  std::optional<double> threshold;
  try {
    threshold = epidemic_threshold(g);
  } catch (const Error&) {
    if (!o.lambda) throw;
  }
  params.infection_prob = o.lambda ? *o.lambda : std::min(1.0, 1.5 * *threshold);

  ScoreVector baseline = degree_scores(g);
  std::vector<SweepMeasure> measures;
  measures.push_back({baseline, Strategy::PositiveFirst});  // self-comparison row, delta_R = 0
  auto score_inputs = ordered_json::array();
  for (const auto& path : o.score_files) {
    ScoreFileHeader h;
    ScoreVector s = load_scores_file(path, g, &h);
    if (!h.graph_hash.empty() && h.graph_hash != graph_hash(g))
      throw Error(ErrorKind::Consistency, path + ": score file was computed on a different graph");
    score_inputs.push_back({{"path", path}, {"measure", s.measure}, {"cover_hash", h.cover_hash}});
    for (Strategy st : strategies) measures.push_back({s, st});
  }

  SweepResult res = sweep(g, measures, baseline, grid, params, o.threads);
  const std::string fp = graph_hash(g);
  write_atomically(dir / "sweep.csv", [&](std::ostream& os) { write_sweep_csv(os, res); });
  write_atomically(dir / "sweep.json", [&](std::ostream& os) { write_sweep_json(os, res, fp); });

  auto strat = ordered_json::array();
  for (Strategy st : strategies) strat.push_back(short_name(st));
  manifest["inputs"]["scores"] = std::move(score_inputs);
  manifest["parameters"] = {{"lambda", params.infection_prob},
                            {"lambda_source", o.lambda ? "user" : "1.5 * epidemic threshold, capped at 1"},
                            {"epidemic_threshold", threshold ? ordered_json(*threshold) : ordered_json(nullptr)},
                            {"gamma", params.recovery_prob},
                            {"runs", params.runs},
                            {"fgrid", o.fgrid},
                            {"f_values", grid},
                            {"strategies", std::move(strat)},
                            {"seed", params.seed}};
  manifest["outputs"] = {"sweep.csv", "sweep.json"};
  write_manifest(dir, manifest);
  out << "lambda\t" << format_double(params.infection_prob) << "\ngamma\t" << format_double(params.recovery_prob)
      << "\nwrote\t" << (dir / "sweep.csv").string() << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modularity vitality centralities on overlapping community structure"};
  app.require_subcommand(1);
  Options o;

  auto add_edges = [&](CLI::App* c) { c->add_option("--edges", o.edges, "edge list file")->required(); };
  auto add_out = [&](CLI::App* c, bool required) {
    auto opt = c->add_option("--out", o.out_dir, "output directory");
    if (required) opt->required();
  };
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "master seed")->capture_default_str(); };
  auto add_threads = [&](CLI::App* c) {
    c->add_option("--threads", o.threads, "worker threads (0 = OpenMP default)")->capture_default_str();
  };

  auto* stats = app.add_subcommand("stats", "topology and community statistics");
  add_edges(stats);
  stats->add_option("--cover", o.cover, "cover file");
  stats->add_option("--partition", o.partition, "partition file");
  add_out(stats, false);

  auto* lcc = app.add_subcommand("lcc", "extract the largest connected component");
  add_edges(lcc);
  add_out(lcc, true);

  auto* detect = app.add_subcommand("detect", "SLPA overlapping community detection");
  add_edges(detect);
  detect->add_option("--slpa-T", o.slpa_t, "iterations")->capture_default_str()->check(CLI::PositiveNumber);
  detect->add_option("--slpa-r", o.slpa_r, "membership threshold")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  add_seed(detect);
  add_out(detect, true);

  auto* score = app.add_subcommand("score", "vitality or degree scores");
  add_edges(score);
  score->add_option("--cover", o.cover, "cover file");
  score->add_option("--partition", o.partition, "partition file");
  score->add_option("--measure", o.measure, "mv, omv or degree")
      ->capture_default_str()
      ->check(CLI::IsMember({"mv", "omv", "degree"}));
  score->add_flag("--verify", o.verify, "re-check ~1% of nodes by full recomputation");
  add_seed(score);
  add_threads(score);
  add_out(score, true);

  auto* rankc = app.add_subcommand("rank", "rank nodes from score files");
  add_edges(rankc);
  rankc->add_option("--scores", o.score_files, "score file (repeatable)")->required();
  rankc->add_option("--strategy", o.strategies, "pos, neg or abs (repeatable; default all)");
  add_out(rankc, true);

  auto* sweepc = app.add_subcommand("sweep", "SIR outbreak sweep against the degree baseline");
  add_edges(sweepc);
  sweepc->add_option("--scores", o.score_files, "score file (repeatable)");
  sweepc->add_option("--strategy", o.strategies, "pos, neg or abs (repeatable; default all)");
  sweepc->add_option("--lambda", o.lambda, "infection probability (default 1.5 * threshold)");
  sweepc->add_option("--gamma", o.gamma, "recovery probability")->capture_default_str();
  sweepc->add_option("--runs", o.runs, "simulations per point")->capture_default_str()->check(CLI::PositiveNumber);
  sweepc->add_option("--fgrid", o.fgrid, "START:STOP:STEP")->capture_default_str();
  add_seed(sweepc);
  add_threads(sweepc);
  add_out(sweepc, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << '\n';
      return kOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  auto* sub = app.get_subcommands().front();
  ordered_json manifest = base_manifest(sub->get_name(), argc, argv);
  try {
    if (sub == stats) return cmd_stats(o, manifest, out, err);
    if (sub == lcc) return cmd_lcc(o, manifest, out, err);
    if (sub == detect) return cmd_detect(o, manifest, out, err);
    if (sub == score) return cmd_score(o, manifest, out, err);
    if (sub == rankc) return cmd_rank(o, manifest, out, err);
    if (sub == sweepc) return cmd_sweep(o, manifest, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.kind() == ErrorKind::Parameter) return kUsage;
    return e.is_numeric() ? kNumericError : kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace omv::cli

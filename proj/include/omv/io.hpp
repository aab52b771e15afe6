#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <ostream>
#include <string>

#include "omv/community.hpp"
#include "omv/graph.hpp"
#include "omv/ranking.hpp"
#include "omv/scores.hpp"
#include "omv/sir.hpp"

namespace omv {

/// Shortest decimal text that parses back to the same double; "nan" for NaN.
std::string format_double(double x);
double parse_double(std::string_view text);

/// FNV-1a based fingerprints, rendered as 16 hex digits.
std::string graph_hash(const Graph& g);
std::string cover_hash(const Cover& c);

struct ScoreFileHeader {
  std::string measure;
  std::string graph_hash;
  std::string cover_hash;
};

/// "# omv-scores measure=.. graph=.. cover=.." then "label<TAB>score" lines.
void save_scores(std::ostream& out, const ScoreVector& s, const Graph& g, const ScoreFileHeader& header);
ScoreVector load_scores(std::istream& in, const Graph& g, ScoreFileHeader* header = nullptr);
ScoreVector load_scores_file(const std::string& path, const Graph& g, ScoreFileHeader* header = nullptr);

/// "# omv-ranking strategy=.. measure=.." then "rank<TAB>label<TAB>score", rank from 1.
void save_ranking(std::ostream& out, const Ranking& r, const ScoreVector& s, const Graph& g);

/// CSV columns: measure,strategy,f0,R_mean,R_baseline,delta_R.
void write_sweep_csv(std::ostream& out, const SweepResult& r);
/// JSON document with parameters, grid, per-run outbreak sizes and summaries.
void write_sweep_json(std::ostream& out, const SweepResult& r, const std::string& graph_fingerprint);

/// Writes through a temporary sibling file and renames it into place, so a
/// failed writer never leaves a partial file at `path`.
void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);

}  // namespace omv

#include "omv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "omv/error.hpp"

namespace omv {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

double parse_double(std::string_view text) {
  if (text == "nan" || text == "NaN" || text == "-nan") return std::numeric_limits<double>::quiet_NaN();
  double x = 0.0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || p != text.data() + text.size())
    throw Error(ErrorKind::Parse, "not a number: '" + std::string(text) + "'");
  return x;
}

namespace {

class Fnv1a {
 public:
  void bytes(std::string_view s) {
    for (unsigned char ch : s) {
      h_ ^= ch;
      h_ *= 0x100000001B3ULL;
    }
  }
  void word(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (x >> (8 * i)) & 0xFF;
      h_ *= 0x100000001B3ULL;
    }
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 0xCBF29CE484222325ULL;
};

std::string header_value(const std::string& line, const std::string& key) {
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok)
    if (tok.rfind(key + "=", 0) == 0) return tok.substr(key.size() + 1);
  return {};
}

}  // namespace

std::string graph_hash(const Graph& g) {
  Fnv1a h;
  h.word(g.node_count());
  for (const auto& l : g.labels()) {
    h.bytes(l);
    h.word(l.size());
  }
  for (auto [u, v] : g.edges()) {
    h.word(u);
    h.word(v);
  }
  return h.hex();
}

std::string cover_hash(const Cover& c) {
  Fnv1a h;
  h.word(c.node_count());
  for (NodeId v = 0; v < c.node_count(); ++v) {
    h.word(c.membership_count(v));
    for (auto k : c.memberships(v)) h.word(k);
  }
  return h.hex();
}

void save_scores(std::ostream& out, const ScoreVector& s, const Graph& g, const ScoreFileHeader& header) {
  if (s.size() != g.node_count())
    throw Error(ErrorKind::Consistency, "score vector size does not match the graph");
  out << "# omv-scores v1 measure=" << s.measure << " graph=" << header.graph_hash
      << " cover=" << (header.cover_hash.empty() ? "none" : header.cover_hash) << '\n';
  for (NodeId v = 0; v < s.size(); ++v) out << g.label(v) << '\t' << format_double(s.values[v]) << '\n';
}

ScoreVector load_scores(std::istream& in, const Graph& g, ScoreFileHeader* header) {
  ScoreVector s;
  s.values.assign(g.node_count(), std::numeric_limits<double>::quiet_NaN());
  std::vector<bool> seen(g.node_count(), false);
  ScoreFileHeader h;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("omv-scores") != std::string::npos) {
        h.measure = header_value(line, "measure");
        h.graph_hash = header_value(line, "graph");
        h.cover_hash = header_value(line, "cover");
      }
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(lineno, "expected 'label<TAB>score'");
    NodeId v;
    if (!g.find(std::string_view(line).substr(0, tab), v))
      throw Error(ErrorKind::Consistency,
                  "line " + std::to_string(lineno) + ": node '" + line.substr(0, tab) + "' is not in the graph");
    if (seen[v]) throw ParseError(lineno, "node listed twice");
    seen[v] = true;
    try {
      s.values[v] = parse_double(std::string_view(line).substr(tab + 1));
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (!seen[v]) throw Error(ErrorKind::Coverage, "node '" + g.label(v) + "' has no score");
  s.measure = h.measure.empty() ? "unknown" : h.measure;
  if (header) *header = h;
  return s;
}

ScoreVector load_scores_file(const std::string& path, const Graph& g, ScoreFileHeader* header) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  try {
    return load_scores(in, g, header);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

void save_ranking(std::ostream& out, const Ranking& r, const ScoreVector& s, const Graph& g) {
  out << "# omv-ranking v1 strategy=" << long_name(r.strategy) << " measure=" << r.source_measure << '\n';
  for (std::size_t i = 0; i < r.order.size(); ++i) {
    NodeId v = r.order[i];
    out << (i + 1) << '\t' << g.label(v) << '\t' << format_double(s.values[v]) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  out << "measure,strategy,f0,R_mean,R_baseline,delta_R\n";
  for (const auto& s : r.series)
    for (std::size_t i = 0; i < r.f_grid.size(); ++i)
      out << s.measure << ',' << short_name(s.strategy) << ',' << format_double(r.f_grid[i]) << ','
          << format_double(s.r_mean[i]) << ',' << format_double(r.baseline_mean[i]) << ','
          << format_double(s.delta_r[i]) << '\n';
}

void write_sweep_json(std::ostream& out, const SweepResult& r, const std::string& graph_fingerprint) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["format"] = "omv-sweep v1";
  doc["graph"] = graph_fingerprint;
  doc["parameters"] = {{"lambda", r.params.infection_prob},
                       {"gamma", r.params.recovery_prob},
                       {"runs", r.params.runs},
                       {"seed", r.params.seed}};
  doc["f_grid"] = r.f_grid;
  doc["baseline"] = {{"measure", "degree"},
                     {"strategy", "positive_first"},
                     {"R_mean", r.baseline_mean},
                     {"outbreaks", r.baseline_outbreaks}};
  auto series = ordered_json::array();
  for (const auto& s : r.series) {
    series.push_back({{"measure", s.measure},
                      {"strategy", long_name(s.strategy)},
                      {"R_mean", s.r_mean},
                      {"delta_R", s.delta_r},
                      {"outbreaks", s.outbreaks}});
  }
  doc["series"] = std::move(series);
  out << doc.dump(2) << '\n';
}

void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + tmp.string() + "'");
    try {
      writer(out);
      out.flush();
      if (!out) throw Error(ErrorKind::Io, "write failed for '" + tmp.string() + "'");
    } catch (...) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot move output into '" + path.string() + "'");
  }
}

}  // namespace omv

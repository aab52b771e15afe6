#include "omv/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

#include "omv/error.hpp"
#include "omv/scores.hpp"

namespace omv {

Graph Graph::from_edges(std::vector<std::string> labels,
                        std::span<const std::pair<NodeId, NodeId>> edges) {
  Graph g;
  const std::size_t n = labels.size();
  std::vector<std::vector<NodeId>> adj(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw Error(ErrorKind::NodeId, "edge endpoint out of range");
    if (u == v) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    auto& a = adj[v];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    g.offsets_[v + 1] = g.offsets_[v] + a.size();
  }
  g.neighbors_.reserve(g.offsets_[n]);
  for (auto& a : adj) g.neighbors_.insert(g.neighbors_.end(), a.begin(), a.end());

  g.index_.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!g.index_.emplace(labels[v], static_cast<NodeId>(v)).second)
      throw Error(ErrorKind::Consistency, "duplicate node label '" + labels[v] + "'");
  }
  g.labels_ = std::move(labels);
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::find(std::string_view label, NodeId& out) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return false;
  out = it->second;
  return true;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u)
    for (NodeId v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph Graph::induced(const std::vector<bool>& keep) const {
  const std::size_t n = node_count();
  std::vector<NodeId> remap(n, 0);
  std::vector<std::string> labels;
  for (NodeId v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    remap[v] = static_cast<NodeId>(labels.size());
    labels.push_back(labels_[v]);
  }
  std::vector<std::pair<NodeId, NodeId>> sub;
  for (auto [u, v] : edges())
    if (keep[u] && keep[v]) sub.emplace_back(remap[u], remap[v]);
  return from_edges(std::move(labels), sub);
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace

Graph load_edge_list(std::istream& in, LoadDiagnostics* diagnostics) {
  LoadDiagnostics diag;
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::pair<NodeId, NodeId>> edges;

  auto intern = [&](std::string_view tok) {
    auto [it, inserted] = ids.emplace(std::string(tok), static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(tok);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (view[first] == '#' || view[first] == '%') continue;
    auto tokens = split_tokens(view);
    if (tokens.size() != 2)
      throw ParseError(lineno, "expected two endpoint labels, found " +
                                   std::to_string(tokens.size()) + " tokens");
    NodeId u = intern(tokens[0]);
    NodeId v = intern(tokens[1]);
    if (u == v) {
      ++diag.self_loops_dropped;
      continue;
    }
    edges.emplace_back(u, v);
  }
  diag.lines_read = lineno;
  if (labels.empty()) throw Error(ErrorKind::EmptyGraph, "edge list contains no edges");

  const std::size_t raw = edges.size();
  Graph g = Graph::from_edges(std::move(labels), edges);
  diag.duplicate_edges_merged = raw - g.edge_count();
  if (diagnostics) *diagnostics = diag;
  return g;
}

Graph load_edge_list_file(const std::string& path, LoadDiagnostics* diagnostics) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open edge list '" + path + "'");
  try {
    return load_edge_list(in, diagnostics);
  } catch (const ParseError& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

void save_edge_list(const Graph& g, std::ostream& out) {
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

std::vector<std::size_t> connected_components(const Graph& g) {
  constexpr auto unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(g.node_count(), unseen);
  std::size_t next = 0;
  std::deque<NodeId> queue;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (comp[s] != unseen) continue;
    comp[s] = next;
    queue.push_back(s);
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      for (NodeId v : g.neighbors(u)) {
        if (comp[v] == unseen) {
          comp[v] = next;
          queue.push_back(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

Graph largest_connected_component(const Graph& g) {
  if (g.empty()) throw Error(ErrorKind::EmptyGraph, "graph has no nodes");
  auto comp = connected_components(g);
  std::size_t count = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::size_t> sizes(count, 0);
  for (auto c : comp) ++sizes[c];
  // components are numbered by smallest member, so the first maximum wins ties
  std::size_t best = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<bool> keep(g.node_count());
  for (std::size_t v = 0; v < keep.size(); ++v) keep[v] = comp[v] == best;
  return g.induced(keep);
}

std::uint64_t triangle_count(const Graph& g) {
  std::uint64_t triangles = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto nu = g.neighbors(u);
    for (NodeId v : nu) {
      if (v <= u) continue;
      auto nv = g.neighbors(v);
      // common neighbours w > v
      auto a = std::upper_bound(nu.begin(), nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) ++a;
        else if (*b < *a) ++b;
        else { ++triangles; ++a; ++b; }
      }
    }
  }
  return triangles;
}

TopologyStats topology_stats(const Graph& g) {
  TopologyStats s;
  s.n = g.node_count();
  s.m = g.edge_count();
  if (s.n == 0) throw Error(ErrorKind::EmptyGraph, "graph has no nodes");
  s.avg_degree = 2.0 * static_cast<double>(s.m) / static_cast<double>(s.n);
  std::uint64_t triples = 0;
  for (NodeId v = 0; v < s.n; ++v) {
    std::uint64_t k = g.degree(v);
    if (k >= 2) triples += k * (k - 1) / 2;
  }
  s.transitivity = triples == 0 ? 0.0
                                : 3.0 * static_cast<double>(triangle_count(g)) /
                                      static_cast<double>(triples);
  return s;
}

std::size_t degree(const Graph& g, NodeId v) {
  if (v >= g.node_count())
    throw Error(ErrorKind::NodeId, "node id " + std::to_string(v) + " out of range");
  return g.degree(v);
}

ScoreVector degree_scores(const Graph& g) {
  ScoreVector s{"degree", std::vector<double>(g.node_count())};
  for (NodeId v = 0; v < g.node_count(); ++v) s.values[v] = static_cast<double>(g.degree(v));
  return s;
}

}  // namespace omv

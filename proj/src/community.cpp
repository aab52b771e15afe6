#include "omv/community.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <random>

#include "omv/error.hpp"
#include "omv/random.hpp"

namespace omv {

Cover Cover::from_memberships(std::vector<std::vector<CommunityId>> memberships) {
  Cover c;
  const std::size_t n = memberships.size();
  c.offsets_.assign(n + 1, 0);
  CommunityId max_id = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto& m = memberships[v];
    if (m.empty())
      throw Error(ErrorKind::Coverage, "node " + std::to_string(v) + " belongs to no community");
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    max_id = std::max(max_id, m.back());
    c.offsets_[v + 1] = c.offsets_[v] + m.size();
  }
  c.ids_.reserve(c.offsets_[n]);
  c.coefficient_.resize(n);
  c.members_.assign(n == 0 ? 0 : std::size_t{max_id} + 1, {});
  for (std::size_t v = 0; v < n; ++v) {
    c.coefficient_[v] = 1.0 / static_cast<double>(memberships[v].size());
    for (CommunityId k : memberships[v]) {
      c.ids_.push_back(k);
      c.members_[k].push_back(static_cast<NodeId>(v));
    }
  }
  for (std::size_t k = 0; k < c.members_.size(); ++k)
    if (c.members_[k].empty())
      throw Error(ErrorKind::Consistency, "community " + std::to_string(k) + " has no members");
  return c;
}

bool Cover::contains(NodeId v, CommunityId c) const {
  auto m = memberships(v);
  // membership lists are short; a linear scan beats binary search here
  return std::find(m.begin(), m.end(), c) != m.end();
}

Cover Cover::canonicalized() const {
  const std::size_t k = community_count();
  std::vector<CommunityId> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](CommunityId a, CommunityId b) {
    if (members_[a].size() != members_[b].size()) return members_[a].size() > members_[b].size();
    return members_[a].front() < members_[b].front();
  });
  std::vector<CommunityId> relabel(k);
  for (std::size_t i = 0; i < k; ++i) relabel[order[i]] = static_cast<CommunityId>(i);
  std::vector<std::vector<CommunityId>> m(node_count());
  for (NodeId v = 0; v < node_count(); ++v)
    for (CommunityId c : memberships(v)) m[v].push_back(relabel[c]);
  return from_memberships(std::move(m));
}

Cover Cover::restricted(const std::vector<bool>& keep) const {
  std::vector<bool> used(community_count(), false);
  for (NodeId v = 0; v < node_count(); ++v)
    if (keep[v])
      for (CommunityId c : memberships(v)) used[c] = true;
  std::vector<CommunityId> relabel(community_count(), 0);
  CommunityId next = 0;
  for (std::size_t c = 0; c < used.size(); ++c)
    if (used[c]) relabel[c] = next++;
  std::vector<std::vector<CommunityId>> m;
  for (NodeId v = 0; v < node_count(); ++v) {
    if (!keep[v]) continue;
    auto& row = m.emplace_back();
    for (CommunityId c : memberships(v)) row.push_back(relabel[c]);
  }
  return from_memberships(std::move(m));
}

Partition Partition::from_assignment(std::span<const CommunityId> community_of) {
  std::vector<std::vector<CommunityId>> m(community_of.size());
  for (std::size_t v = 0; v < community_of.size(); ++v) m[v] = {community_of[v]};
  return Partition(Cover::from_memberships(std::move(m)));
}

Partition Partition::from_cover(Cover cover) {
  if (!cover.is_crisp())
    throw Error(ErrorKind::Coverage, "cover has overlapping nodes; a partition needs one community per node");
  return Partition(std::move(cover));
}

Cover slpa_detect(const Graph& g, const SlpaParams& params) {
  if (params.iterations < 1) throw Error(ErrorKind::Parameter, "SLPA needs at least one iteration");
  if (!(params.threshold > 0.0 && params.threshold < 1.0))
    throw Error(ErrorKind::Parameter, "SLPA threshold must lie in (0, 1)");
  const std::size_t n = g.node_count();
  if (n == 0) throw Error(ErrorKind::EmptyGraph, "graph has no nodes");

  std::mt19937_64 rng(params.seed);
  std::vector<std::vector<NodeId>> memory(n);
  for (NodeId v = 0; v < n; ++v) {
    memory[v].reserve(static_cast<std::size_t>(params.iterations) + 1);
    memory[v].push_back(v);
  }

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::pair<NodeId, std::uint32_t>> heard;
  std::vector<NodeId> tied;

  for (int t = 0; t < params.iterations; ++t) {
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);

    for (NodeId listener : order) {
      auto speakers = g.neighbors(listener);
      if (speakers.empty()) continue;
      heard.clear();
      for (NodeId s : speakers) {
        const auto& mem = memory[s];
        NodeId label = mem[uniform_below(rng, mem.size())];
        auto it = std::find_if(heard.begin(), heard.end(),
                               [label](const auto& e) { return e.first == label; });
        if (it == heard.end()) heard.emplace_back(label, 1);
        else ++it->second;
      }
      std::uint32_t best = 0;
      for (const auto& e : heard) best = std::max(best, e.second);
      tied.clear();
      for (const auto& e : heard)
        if (e.second == best) tied.push_back(e.first);
      memory[listener].push_back(tied.size() == 1 ? tied.front() : tied[uniform_below(rng, tied.size())]);
    }
  }

  // Threshold label distributions into memberships.
  std::map<NodeId, CommunityId> community_of_label;
  std::vector<std::vector<NodeId>> kept(n);
  std::vector<std::pair<NodeId, std::uint32_t>> freq;
  for (NodeId v = 0; v < n; ++v) {
    auto mem = memory[v];
    std::sort(mem.begin(), mem.end());
    freq.clear();
    for (NodeId label : mem) {
      if (!freq.empty() && freq.back().first == label) ++freq.back().second;
      else freq.emplace_back(label, 1);
    }
    const double total = static_cast<double>(mem.size());
    for (const auto& [label, count] : freq)
      if (static_cast<double>(count) / total >= params.threshold) kept[v].push_back(label);
    if (kept[v].empty()) {
      // freq is label-ordered, so max_element returns the smallest tied label
      auto top = std::max_element(freq.begin(), freq.end(),
                                  [](const auto& a, const auto& b) { return a.second < b.second; });
      kept[v].push_back(top->first);
    }
    for (NodeId label : kept[v]) community_of_label.emplace(label, 0);
  }
  CommunityId next = 0;
  for (auto& [label, id] : community_of_label) id = next++;

  std::vector<std::vector<CommunityId>> m(n);
  for (NodeId v = 0; v < n; ++v)
    for (NodeId label : kept[v]) m[v].push_back(community_of_label.at(label));
  return remove_nested_communities(Cover::from_memberships(std::move(m))).canonicalized();
}

Cover remove_nested_communities(const Cover& cover) {
  const std::size_t k = cover.community_count();
  std::vector<bool> drop(k, false);
  for (CommunityId a = 0; a < k; ++a) {
    const auto& ma = cover.members(a);
    // any superset must contain the member of a with the fewest memberships
    NodeId pivot = *std::min_element(ma.begin(), ma.end(), [&](NodeId x, NodeId y) {
      return cover.membership_count(x) < cover.membership_count(y);
    });
    for (CommunityId b : cover.memberships(pivot)) {
      if (b == a || drop[b]) continue;
      const auto& mb = cover.members(b);
      if (mb.size() < ma.size()) continue;
      // equal sets: keep the smaller id
      if (mb.size() == ma.size() && b > a) continue;
      if (std::includes(mb.begin(), mb.end(), ma.begin(), ma.end())) {
        drop[a] = true;
        break;
      }
    }
  }
  std::vector<CommunityId> relabel(k, 0);
  CommunityId next = 0;
  for (std::size_t c = 0; c < k; ++c)
    if (!drop[c]) relabel[c] = next++;
  std::vector<std::vector<CommunityId>> m(cover.node_count());
  for (NodeId v = 0; v < cover.node_count(); ++v)
    for (CommunityId c : cover.memberships(v))
      if (!drop[c]) m[v].push_back(relabel[c]);
  return Cover::from_memberships(std::move(m));
}

CoverStats cover_stats(const Cover& cover) {
  CoverStats s;
  s.community_count = cover.community_count();
  const std::size_t n = cover.node_count();
  if (n == 0) return s;
  std::size_t overlapping = 0;
  std::size_t total = 0;
  for (NodeId v = 0; v < n; ++v) {
    auto o = cover.membership_count(v);
    total += o;
    if (o >= 2) ++overlapping;
  }
  s.overlap_fraction = static_cast<double>(overlapping) / static_cast<double>(n);
  s.avg_memberships = static_cast<double>(total) / static_cast<double>(n);
  return s;
}

Partition collapse_to_partition(const Cover& cover) {
  const std::size_t n = cover.node_count();
  // Coefficients are uniform within a node, so the maximal one is any of
  // them and the tie-break picks the smallest id.
  std::vector<CommunityId> pick(n);
  std::vector<bool> used(cover.community_count(), false);
  for (NodeId v = 0; v < n; ++v) {
    pick[v] = cover.memberships(v).front();
    used[pick[v]] = true;
  }
  std::vector<CommunityId> relabel(cover.community_count(), 0);
  CommunityId next = 0;
  for (std::size_t c = 0; c < used.size(); ++c)
    if (used[c]) relabel[c] = next++;
  for (auto& c : pick) c = relabel[c];
  return Partition::from_assignment(pick);
}

namespace {

constexpr const char* kCoverHeader = "# omv-cover v1";
constexpr const char* kPartitionHeader = "# omv-partition v1";

std::vector<std::vector<std::uint64_t>> read_assignment(std::istream& in, const Graph& g) {
  std::vector<std::vector<std::uint64_t>> raw(g.node_count());
  std::vector<bool> seen(g.node_count(), false);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#' || line[first] == '%') continue;
    auto sep = line.find('\t', first);
    if (sep == std::string::npos) sep = line.find(' ', first);
    if (sep == std::string::npos) throw ParseError(lineno, "expected 'label<TAB>communities'");
    std::string label = line.substr(first, sep - first);
    NodeId v;
    if (!g.find(label, v))
      throw Error(ErrorKind::Consistency, "line " + std::to_string(lineno) + ": node '" + label +
                                              "' is not in the graph");
    if (seen[v]) throw ParseError(lineno, "node '" + label + "' listed twice");
    seen[v] = true;

    std::string_view rest(line);
    rest.remove_prefix(sep + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      auto end = rest.find(',', pos);
      if (end == std::string_view::npos) end = rest.size();
      auto tok = rest.substr(pos, end - pos);
      while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
      while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.remove_suffix(1);
      std::uint64_t id = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
      if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError(lineno, "bad community index '" + std::string(tok) + "'");
      raw[v].push_back(id);
      pos = end + 1;
    }
  }
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (!seen[v]) throw Error(ErrorKind::Coverage, "node '" + g.label(v) + "' has no community assignment");
  return raw;
}

Cover densify(const std::vector<std::vector<std::uint64_t>>& raw) {
  std::map<std::uint64_t, CommunityId> dense;
  for (const auto& row : raw)
    for (auto id : row) dense.emplace(id, 0);
  CommunityId next = 0;
  for (auto& [id, d] : dense) d = next++;
  std::vector<std::vector<CommunityId>> m(raw.size());
  for (std::size_t v = 0; v < raw.size(); ++v)
    for (auto id : raw[v]) m[v].push_back(dense.at(id));
  return Cover::from_memberships(std::move(m));
}

template <class F>
auto with_file(const std::string& path, F&& f) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  try {
    return f(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

}  // namespace

Cover load_cover(std::istream& in, const Graph& g) { return densify(read_assignment(in, g)); }

Cover load_cover_file(const std::string& path, const Graph& g) {
  return with_file(path, [&](std::istream& in) { return load_cover(in, g); });
}

void save_cover(std::ostream& out, const Cover& cover, const Graph& g) {
  if (cover.node_count() != g.node_count())
    throw Error(ErrorKind::Consistency, "cover and graph disagree on node count");
  out << kCoverHeader << '\n';
  for (NodeId v = 0; v < cover.node_count(); ++v) {
    out << g.label(v) << '\t';
    bool first = true;
    for (CommunityId c : cover.memberships(v)) {
      if (!first) out << ',';
      out << c;
      first = false;
    }
    out << '\n';
  }
}

Partition load_partition(std::istream& in, const Graph& g) {
  auto raw = read_assignment(in, g);
  for (NodeId v = 0; v < raw.size(); ++v)
    if (raw[v].size() != 1)
      throw Error(ErrorKind::Coverage, "node '" + g.label(v) + "' has " +
                                           std::to_string(raw[v].size()) +
                                           " communities in a partition file");
  return Partition::from_cover(densify(raw));
}

Partition load_partition_file(const std::string& path, const Graph& g) {
  return with_file(path, [&](std::istream& in) { return load_partition(in, g); });
}

void save_partition(std::ostream& out, const Partition& p, const Graph& g) {
  if (p.node_count() != g.node_count())
    throw Error(ErrorKind::Consistency, "partition and graph disagree on node count");
  out << kPartitionHeader << '\n';
  for (NodeId v = 0; v < p.node_count(); ++v) out << g.label(v) << '\t' << p.community_of(v) << '\n';
}

}  // namespace omv

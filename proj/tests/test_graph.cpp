#include <doctest.h>

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "omv/error.hpp"
#include "omv/graph.hpp"
#include "omv/scores.hpp"

using namespace omv;
using omv::test::graph_from;

namespace {
Graph parse(const std::string& text, LoadDiagnostics* d = nullptr) {
  std::istringstream in(text);
  return load_edge_list(in, d);
}

bool is_connected(const Graph& g) {
  if (g.empty()) return true;
  std::vector<bool> seen(g.node_count(), false);
  std::deque<NodeId> q{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop_front();
    for (NodeId v : g.neighbors(u))
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        q.push_back(v);
      }
  }
  return count == g.node_count();
}
}  // namespace

TEST_CASE("edge list loading") {
  SUBCASE("simple path") {
    Graph g = parse("a b\nb c\n");
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.label(0) == "a");
    CHECK(g.label(2) == "c");
  }
  SUBCASE("duplicates, reversed edges and self-loops") {
    LoadDiagnostics d;
    Graph g = parse("a b\nb a\na a\n", &d);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(d.self_loops_dropped == 1);
    CHECK(d.duplicate_edges_merged == 1);
  }
  SUBCASE("comments, commas and blank lines") {
    Graph g = parse("# header\n% other\n\n1,2\n2\t3\r\n");
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
  }
  SUBCASE("malformed line reports its number") {
    try {
      parse("a b\nb c d\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(parse("# nothing\n"), Error);
    try {
      parse("");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EmptyGraph);
    }
  }
  SUBCASE("missing file") {
    try {
      load_edge_list_file("/nonexistent/edges.txt");
      FAIL("expected an io error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Io);
    }
  }
}

TEST_CASE("graph invariants on random inputs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::ostringstream text;
    std::vector<std::pair<int, int>> lines;
    for (int i = 0; i < 60; ++i) lines.emplace_back(static_cast<int>(rng() % 25), static_cast<int>(rng() % 25));
    for (auto [a, b] : lines) text << a << ' ' << b << '\n';
    Graph g = parse(text.str());

    std::size_t degree_sum = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      auto nb = g.neighbors(v);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
      for (NodeId u : nb) {
        CHECK(u != v);
        CHECK(g.has_edge(u, v));
      }
      degree_sum += nb.size();
    }
    CHECK(degree_sum == 2 * g.edge_count());

    // swapping endpoints and shuffling lines gives the same edge set by label
    std::shuffle(lines.begin(), lines.end(), rng);
    std::ostringstream swapped;
    for (auto [a, b] : lines) swapped << b << ' ' << a << '\n';
    Graph h = parse(swapped.str());
    REQUIRE(h.node_count() == g.node_count());
    REQUIRE(h.edge_count() == g.edge_count());
    for (auto [u, v] : g.edges()) {
      NodeId hu, hv;
      REQUIRE(h.find(g.label(u), hu));
      REQUIRE(h.find(g.label(v), hv));
      CHECK(h.has_edge(hu, hv));
    }

    Graph lcc = largest_connected_component(g);
    CHECK(is_connected(lcc));
    CHECK(lcc.node_count() <= g.node_count());
  }
}

TEST_CASE("largest connected component") {
  SUBCASE("connected triangle is unchanged") {
    Graph g = graph_from(3, {{0, 1}, {1, 2}, {0, 2}});
    Graph l = largest_connected_component(g);
    CHECK(l.node_count() == 3);
    CHECK(l.edge_count() == 3);
  }
  SUBCASE("triangle plus an edge keeps the triangle") {
    Graph g = parse("x y\na b\nb c\nc a\n");
    Graph l = largest_connected_component(g);
    CHECK(l.node_count() == 3);
    NodeId id;
    CHECK(l.find("a", id));
    CHECK_FALSE(l.find("x", id));
  }
  SUBCASE("tie goes to the smallest dense id") {
    Graph g = parse("c d\na b\n");
    Graph l = largest_connected_component(g);
    CHECK(l.node_count() == 2);
    NodeId id;
    CHECK(l.find("c", id));
    CHECK(l.find("d", id));
  }
  SUBCASE("empty graph") {
    CHECK_THROWS_AS(largest_connected_component(Graph{}), Error);
  }
}

TEST_CASE("topology statistics") {
  auto k3 = omv::test::complete_graph(3);
  auto s = topology_stats(k3);
  CHECK(s.avg_degree == doctest::Approx(2.0));
  CHECK(s.transitivity == 1.0);

  auto path = graph_from(3, {{0, 1}, {1, 2}});
  s = topology_stats(path);
  CHECK(s.avg_degree == doctest::Approx(4.0 / 3.0));
  CHECK(s.transitivity == 0.0);

  for (NodeId n = 3; n <= 9; ++n) CHECK(topology_stats(omv::test::complete_graph(n)).transitivity == 1.0);
  CHECK(topology_stats(omv::test::cycle_graph(8)).transitivity == 0.0);

  // no connected triples at all
  auto matching = graph_from(4, {{0, 1}, {2, 3}});
  CHECK(topology_stats(matching).transitivity == 0.0);

  // triangle with a pendant: 1 triangle, triples = 3 + 1 + 1 + 0 = 5 -> 3/5
  auto paw = graph_from(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  CHECK(triangle_count(paw) == 1);
  CHECK(topology_stats(paw).transitivity == doctest::Approx(0.6));
}

TEST_CASE("degree") {
  auto star = graph_from(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK(degree(star, 0) == 4);
  CHECK(degree(star, 1) == 1);
  auto isolated = Graph::from_edges({"a", "b", "c"}, std::vector<std::pair<NodeId, NodeId>>{{0, 1}});
  CHECK(degree(isolated, 2) == 0);
  CHECK_THROWS_AS(degree(star, 5), Error);

  auto scores = degree_scores(star);
  double sum = 0;
  for (double x : scores.values) sum += x;
  CHECK(sum == 2.0 * static_cast<double>(star.edge_count()));
  CHECK(scores.measure == "degree");
}

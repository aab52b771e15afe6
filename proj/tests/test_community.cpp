#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "omv/community.hpp"
#include "omv/error.hpp"

using namespace omv;
using namespace omv::test;

namespace {
void check_cover_invariants(const Cover& c) {
  for (NodeId v = 0; v < c.node_count(); ++v) {
    REQUIRE(c.membership_count(v) >= 1);
    double sum = 0.0;
    for (CommunityId k = 0; k < c.community_count(); ++k) {
      const double a = c.belonging(v, k);
      CHECK(a >= 0.0);
      CHECK(a <= 1.0);
      CHECK((a > 0.0) == c.contains(v, k));
      if (a > 0.0) CHECK(a == 1.0 / static_cast<double>(c.membership_count(v)));
      sum += a;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
  for (CommunityId k = 0; k < c.community_count(); ++k) CHECK_FALSE(c.members(k).empty());
}
}  // namespace

TEST_CASE("belonging coefficients are 1/O") {
  Cover c = belonging_coefficients({{0}, {0, 1}, {0, 1, 2, 3}, {2}, {3}});
  CHECK(c.belonging(0, 0) == 1.0);
  CHECK(c.belonging(1, 0) == 0.5);
  CHECK(c.belonging(1, 1) == 0.5);
  CHECK(c.belonging(2, 3) == 0.25);
  CHECK(c.belonging(0, 1) == 0.0);
  check_cover_invariants(c);

  CHECK_THROWS_AS(belonging_coefficients({{0}, {}}), Error);
  try {
    belonging_coefficients({{0}, {}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Coverage);
  }
  // id 1 unused -> empty community
  CHECK_THROWS_AS(belonging_coefficients({{0}, {2}}), Error);
}

TEST_CASE("partition") {
  std::vector<CommunityId> a{1, 0, 1};
  Partition p = Partition::from_assignment(a);
  CHECK(p.community_of(0) == 1);
  CHECK(p.cover().is_crisp());
  CHECK_THROWS_AS(Partition::from_cover(Cover::from_memberships({{0, 1}, {1}})), Error);
}

TEST_CASE("cover statistics") {
  std::vector<CommunityId> a{0, 0, 1, 1};
  auto crisp = cover_stats(Partition::from_assignment(a).cover());
  CHECK(crisp.overlap_fraction == 0.0);
  CHECK(crisp.avg_memberships == 1.0);
  CHECK(crisp.community_count == 2);

  auto s = cover_stats(Cover::from_memberships({{0}, {1}, {0, 1}, {0, 1}}));
  CHECK(s.overlap_fraction == 0.5);
  CHECK(s.avg_memberships == 1.5);
}

TEST_CASE("collapse to partition") {
  std::vector<CommunityId> a{0, 1, 1, 2};
  Partition p = Partition::from_assignment(a);
  CHECK(collapse_to_partition(p.cover()) == p);

  Partition q = collapse_to_partition(Cover::from_memberships({{0, 1}, {1}}));
  CHECK(q.community_of(0) == 0);
  CHECK(q.community_of(1) == 1);

  // every node overlaps two communities equally; community 2 empties out
  Partition r = collapse_to_partition(Cover::from_memberships({{0, 2}, {1, 2}, {0, 2}}));
  CHECK(r.community_of(0) == 0);
  CHECK(r.community_of(1) == 1);
  CHECK(r.community_count() == 2);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    auto s = cover_stats(collapse_to_partition(random_cover(40, 6, 3, rng)).cover());
    CHECK(s.overlap_fraction == 0.0);
    CHECK(s.avg_memberships == 1.0);
  }
}

TEST_CASE("cover canonicalization and restriction") {
  Cover c = Cover::from_memberships({{2}, {0, 2}, {1}, {1}, {1}, {2}});
  Cover k = c.canonicalized();
  // sizes 1, 3, 3; the size-3 tie goes to community 2 (it holds node 0)
  CHECK(k.memberships(0)[0] == 0);
  CHECK(k.memberships(2)[0] == 1);
  CHECK(k.members(2) == std::vector<NodeId>{1});
  check_cover_invariants(k);

  std::vector<bool> keep{true, false, true, true, true, true};
  Cover r = c.restricted(keep);
  CHECK(r.node_count() == 5);
  CHECK(r.community_count() == 2);  // community 0 only had node 1
}

TEST_CASE("cover file round trip and errors") {
  Graph g = Graph::from_edges({"a", "b", "c", "d"}, std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}, {2, 3}});
  Cover c = Cover::from_memberships({{0}, {0, 1}, {1, 2}, {2}});
  std::stringstream ss;
  save_cover(ss, c, g);
  CHECK(ss.str().rfind("# omv-cover", 0) == 0);
  CHECK(load_cover(ss, g) == c);

  std::istringstream foreign("a\t0\nb\t0\nc\t0\nd\t0\nx\t1\n");
  try {
    load_cover(foreign, g);
    FAIL("expected consistency error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Consistency);
  }

  std::istringstream missing("a\t0\nb\t0\nc\t1\n");
  try {
    load_cover(missing, g);
    FAIL("expected coverage error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Coverage);
  }

  // sparse external ids (e.g. from another detector) are densified in order
  std::istringstream sparse("a\t10\nb\t10\nc 42\nd\t42\n");
  Partition p = load_partition(sparse, g);
  CHECK(p.community_count() == 2);
  CHECK(p.community_of(2) == 1);

  std::stringstream ps;
  save_partition(ps, p, g);
  CHECK(load_partition(ps, g) == p);

  std::istringstream overlapping("a\t0\nb\t0,1\nc\t1\nd\t1\n");
  CHECK_THROWS_AS(load_partition(overlapping, g), Error);

  std::istringstream bad("a\t0\nb\tzero\n");
  CHECK_THROWS_AS(load_cover(bad, g), ParseError);
}

TEST_CASE("cover file round trip on random covers") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    Graph g = random_graph(30, 0.1, rng);
    Cover c = random_cover(30, 5, 3, rng);
    std::stringstream ss;
    save_cover(ss, c, g);
    CHECK(load_cover(ss, g) == c);
  }
}

TEST_CASE("SLPA") {
  SUBCASE("parameter checks") {
    Graph g = complete_graph(4);
    CHECK_THROWS_AS(slpa_detect(g, {0, 0.01, 1}), Error);
    CHECK_THROWS_AS(slpa_detect(g, {10, 0.0, 1}), Error);
    CHECK_THROWS_AS(slpa_detect(g, {10, 1.0, 1}), Error);
  }
  SUBCASE("default threshold") { CHECK(SlpaParams{}.threshold == 0.01); }

  SUBCASE("deterministic for a fixed seed") {
    std::mt19937_64 rng(5);
    Graph g = random_graph(60, 0.08, rng);
    SlpaParams p{50, 0.05, 99};
    CHECK(slpa_detect(g, p) == slpa_detect(g, p));
  }

  SUBCASE("isolated nodes become singletons") {
    Graph g = Graph::from_edges({"a", "b", "c"}, std::vector<std::pair<NodeId, NodeId>>{{0, 1}});
    Cover c = slpa_detect(g, {});
    CHECK(c.membership_count(2) == 1);
    CHECK(c.members(c.memberships(2)[0]).size() == 1);
  }

  SUBCASE("two disjoint K5 cliques") {
    std::vector<std::pair<NodeId, NodeId>> e;
    add_clique(e, 0, 5);
    add_clique(e, 5, 5);
    Graph g = graph_from(10, e);
    int exact = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Cover c = slpa_detect(g, {100, 0.01, seed});
      // never spans components
      for (CommunityId k = 0; k < c.community_count(); ++k) {
        const auto& m = c.members(k);
        CHECK((m.front() < 5) == (m.back() < 5));
      }
      if (c.community_count() == 2 && c.members(0).size() == 5 && c.members(1).size() == 5) ++exact;
      for (NodeId v = 0; v < 10; ++v) CHECK(c.membership_count(v) >= 1);
    }
    MESSAGE("two-clique recovery: " << exact << "/100 seeds");
    CHECK(exact >= 95);
  }

  SUBCASE("single K4") {
    Graph g = complete_graph(4);
    int exact = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Cover c = slpa_detect(g, {100, 0.01, seed});
      if (c.community_count() == 1 && c.members(0).size() == 4) ++exact;
    }
    MESSAGE("K4 recovery: " << exact << "/100 seeds");
    CHECK(exact >= 95);
  }

  SUBCASE("random graphs yield valid covers and components stay separate") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t) {
      Graph g = random_graph(80, 0.03, rng);
      Cover c = slpa_detect(g, {30, 0.01, static_cast<std::uint64_t>(t)});
      check_cover_invariants(c);
      auto comp = connected_components(g);
      for (CommunityId k = 0; k < c.community_count(); ++k)
        for (NodeId v : c.members(k)) CHECK(comp[v] == comp[c.members(k).front()]);
    }
  }
}

TEST_CASE("nested community removal") {
  // c1 duplicates c0, c2 is inside c0, c3 overlaps c0 without being nested
  Cover c = Cover::from_memberships({{0, 1, 2}, {0, 1}, {0, 1, 3}, {3}});
  Cover r = remove_nested_communities(c);
  CHECK(r.community_count() == 2);
  CHECK(r.members(0) == std::vector<NodeId>{0, 1, 2});
  CHECK(r.members(1) == std::vector<NodeId>{2, 3});
  CHECK(r.membership_count(0) == 1);
}

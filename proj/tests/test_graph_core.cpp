#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <set>

#include "expander/edge_list.hpp"
#include "expander/error.hpp"
#include "expander/rng.hpp"
#include "expander/rotation_graph.hpp"
#include "oracles.hpp"

using namespace expander;

namespace {

EdgeList cycle_edges(std::uint64_t n) {
  EdgeList el;
  el.kind = EdgeListKind::undirected;
  el.n = n;
  for (std::uint64_t v = 0; v < n; ++v) el.edges.emplace_back(v, (v + 1) % n);
  el.m = el.edges.size();
  return el;
}

EdgeList complete_edges(std::uint64_t n) {
  EdgeList el;
  el.kind = EdgeListKind::undirected;
  el.n = n;
  for (std::uint64_t u = 0; u < n; ++u)
    for (std::uint64_t v = u + 1; v < n; ++v) el.edges.emplace_back(u, v);
  el.m = el.edges.size();
  return el;
}

EdgeList complete_bipartite_edges(std::uint64_t a, std::uint64_t b) {
  EdgeList el;
  el.kind = EdgeListKind::bipartite;
  el.n = a;
  el.m = b;
  for (std::uint64_t u = 0; u < a; ++u)
    for (std::uint64_t v = 0; v < b; ++v) el.edges.emplace_back(u, v);
  return el;
}

void check_involution(const RotationGraph& g) {
  for (std::uint64_t x = 0; x < g.num_darts(); ++x) REQUIRE(g.rot(g.rot(x)) == x);
}

}  // namespace

TEST_CASE("from_edge_list builds a valid 4-cycle") {
  const auto g = RotationGraph::from_edge_list(cycle_edges(4), 1);
  CHECK(g.num_vertices() == 4);
  CHECK(g.degree() == 2);
  CHECK(g.num_edges() == 4);
  CHECK(g.num_half_loops() == 0);
  check_involution(g);
  CHECK(g.is_connected());
  CHECK(girth(g) == 4);
  CHECK(diameter(g) == 2);
}

TEST_CASE("from_edge_list rejects irregular inputs") {
  EdgeList el = cycle_edges(4);
  el.edges.emplace_back(0, 2);
  el.m = el.edges.size();
  CHECK_THROWS_AS(RotationGraph::from_edge_list(el, 1), Error);
}

TEST_CASE("self-loops consume two ports") {
  EdgeList el;
  el.kind = EdgeListKind::undirected;
  el.n = 2;
  el.edges = {{0, 0}, {1, 1}, {0, 1}, {0, 1}};
  el.m = 4;
  const auto g = RotationGraph::from_edge_list(el, 9);
  CHECK(g.degree() == 4);
  check_involution(g);
  CHECK(g.num_half_loops() == 0);
  CHECK(girth(g) == 1);
  auto counts = oracle::adjacency_counts(g);
  CHECK(counts[0][0] == 2);
  CHECK(counts[0][1] == 2);
  CHECK(counts[1][1] == 2);
}

TEST_CASE("half-loop rotation tables are rejected by default") {
  // Single vertex, one fixed dart plus a paired loop.
  std::vector<std::uint64_t> rot = {0, 2, 1};
  CHECK_THROWS_AS(RotationGraph(1, 3, rot), Error);
  const RotationGraph g(1, 3, rot, true);
  CHECK(g.num_half_loops() == 1);
  CHECK(g.num_edges() == 2);
  CHECK(girth(g) == 1);
}

TEST_CASE("parallel edges give girth 2") {
  EdgeList el;
  el.kind = EdgeListKind::undirected;
  el.n = 2;
  el.edges = {{0, 1}, {0, 1}};
  el.m = 2;
  const auto g = RotationGraph::from_edge_list(el, 3);
  CHECK(girth(g) == 2);
}

TEST_CASE("girth and diameter match the deletion oracle on seeded graphs") {
  // Mix of shapes small enough for the O(m^2) oracle.
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto c = RotationGraph::from_edge_list(cycle_edges(5 + seed), seed);
    CHECK(girth(c) == oracle::girth(oracle::from_graph(c)));
    CHECK(diameter(c) == oracle::diameter(oracle::from_graph(c)));
    const auto k = RotationGraph::from_edge_list(complete_edges(4 + seed % 3), seed);
    CHECK(girth(k) == oracle::girth(oracle::from_graph(k)));
    CHECK(diameter(k) == oracle::diameter(oracle::from_graph(k)));
  }
  // Petersen graph: girth 5, diameter 2.
  EdgeList pet;
  pet.kind = EdgeListKind::undirected;
  pet.n = 10;
  pet.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 7}, {7, 9}, {9, 6},
               {6, 8}, {8, 5}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}};
  pet.m = pet.edges.size();
  const auto p = RotationGraph::from_edge_list(pet, 0);
  CHECK(girth(p) == 5);
  CHECK(diameter(p) == 2);
  CHECK(girth(p) == oracle::girth(oracle::from_graph(p)));
}

TEST_CASE("acyclic graph has no girth") {
  EdgeList el;
  el.kind = EdgeListKind::undirected;
  el.n = 2;
  el.edges = {{0, 1}};
  el.m = 1;
  const auto g = RotationGraph::from_edge_list(el, 0);
  CHECK(!girth(g).has_value());
  CHECK(diameter(g) == 1);
}

TEST_CASE("disconnected graph has no finite diameter") {
  EdgeList el;
  el.kind = EdgeListKind::undirected;
  el.n = 4;
  el.edges = {{0, 1}, {2, 3}};
  el.m = 2;
  const auto g = RotationGraph::from_edge_list(el, 0);
  CHECK(!g.is_connected());
  CHECK(!diameter(g).has_value());
}

TEST_CASE("square matches the adjacency-power oracle") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    for (const auto& el : {cycle_edges(6), complete_edges(5)}) {
      const auto g = RotationGraph::from_edge_list(el, seed);
      const auto g2 = square(g);
      CHECK(g2.num_vertices() == g.num_vertices());
      CHECK(g2.degree() == g.degree() * g.degree());
      check_involution(g2);
      const auto a = oracle::adjacency_counts(g);
      CHECK(oracle::adjacency_counts(g2) == oracle::mat_mul(a, a));
    }
  }
}

TEST_CASE("square of square matches the fourth adjacency power") {
  const auto g = RotationGraph::from_edge_list(complete_edges(5), 11);
  const auto g4 = square(square(g));
  CHECK(g4.degree() == 256);
  const auto a = oracle::adjacency_counts(g);
  const auto a2 = oracle::mat_mul(a, a);
  CHECK(oracle::adjacency_counts(g4) == oracle::mat_mul(a2, a2));
}

TEST_CASE("square of an odd-degree graph leaves one half-loop per vertex") {
  const auto g = RotationGraph::from_edge_list(complete_edges(4), 2);
  const auto g2 = square(g);
  CHECK(g2.num_half_loops() == g.num_vertices());
  check_involution(g2);
  const auto a = oracle::adjacency_counts(g);
  CHECK(oracle::adjacency_counts(g2) == oracle::mat_mul(a, a));
}

TEST_CASE("bipartite construction and girth") {
  const auto g = BipartiteGraph::from_edge_list(complete_bipartite_edges(3, 3), 5);
  CHECK(g.num_left() == 3);
  CHECK(g.num_right() == 3);
  CHECK(g.left_degree() == 3);
  CHECK(g.right_degree() == 3);
  CHECK(girth(g) == 4);
  CHECK(diameter(g) == 2);
  CHECK(girth(g) == oracle::girth(oracle::from_graph(g)));
  for (std::uint64_t x = 0; x < g.num_edges(); ++x) {
    const auto [w, j] = g.rot(x / 3, std::uint32_t(x % 3));
    const auto [v, i] = g.rinv(w, j);
    CHECK(v * 3 + i == x);
  }
}

TEST_CASE("bipartite rejects non-biregular input") {
  EdgeList el = complete_bipartite_edges(3, 3);
  el.edges.pop_back();
  CHECK_THROWS_AS(BipartiteGraph::from_edge_list(el, 0), Error);
}

TEST_CASE("bipartite_power cubes match the biadjacency product") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto g = BipartiteGraph::from_edge_list(complete_bipartite_edges(3, 2), seed);
    // (2,3)-biregular on (3,2): cube has degrees (c^2 d, c d^2) = (12, 18).
    const auto g3 = bipartite_power(g, 3);
    CHECK(g3.num_left() == 3);
    CHECK(g3.num_right() == 2);
    CHECK(g3.left_degree() == g.left_degree() * g.left_degree() * g.right_degree());
    CHECK(g3.right_degree() == g.left_degree() * g.right_degree() * g.right_degree());
    const auto b = oracle::biadjacency_counts(g);
    const auto bbb = oracle::mat_mul(oracle::mat_mul(b, oracle::mat_T(b)), b);
    CHECK(oracle::biadjacency_counts(g3) == bbb);
  }
  const auto g = BipartiteGraph::from_edge_list(complete_bipartite_edges(3, 2), 0);
  CHECK_THROWS_AS(bipartite_power(g, 2), Error);
  const auto g1 = bipartite_power(g, 1);
  CHECK(oracle::biadjacency_counts(g1) == oracle::biadjacency_counts(g));
}

TEST_CASE("double cover of a directed cycle is a 2n-cycle") {
  EdgeList el;
  el.kind = EdgeListKind::directed;
  el.n = 5;
  for (std::uint64_t v = 0; v < 5; ++v) el.edges.emplace_back(v, (v + 1) % 5);
  el.m = el.edges.size();
  const auto g = double_cover(el, 7);
  CHECK(g.num_left() == 5);
  CHECK(g.num_right() == 5);
  CHECK(g.left_degree() == 1);
  CHECK(g.right_degree() == 1);
  CHECK(!girth(g).has_value());

  // Out-degree regular but in-degree irregular must fail.
  EdgeList bad;
  bad.kind = EdgeListKind::directed;
  bad.n = 3;
  bad.edges = {{0, 1}, {1, 0}, {2, 0}};
  bad.m = 3;
  CHECK_THROWS_AS(double_cover(bad, 0), Error);
  bad.edges = {{0, 1}, {0, 2}, {1, 0}};
  CHECK_THROWS_AS(double_cover(bad, 0), Error);
}

TEST_CASE("edge list file round trip") {
  const auto el = cycle_edges(6);
  const std::string path = "test_roundtrip_el.txt";
  write_edge_list(el, path);
  const auto back = read_edge_list(path);
  CHECK(back.kind == EdgeListKind::undirected);
  CHECK(back.n == el.n);
  CHECK(back.edges == el.edges);
  std::remove(path.c_str());
}

TEST_CASE("port numbering depends on the seed but structure does not") {
  const auto el = complete_edges(6);
  const auto g1 = RotationGraph::from_edge_list(el, 1);
  const auto g2 = RotationGraph::from_edge_list(el, 2);
  const auto g1b = RotationGraph::from_edge_list(el, 1);
  bool same_rot = true;
  for (std::uint64_t x = 0; x < g1.num_darts(); ++x) {
    if (g1.rot(x) != g2.rot(x)) same_rot = false;
    REQUIRE(g1.rot(x) == g1b.rot(x));
  }
  CHECK(!same_rot);
  CHECK(oracle::adjacency_counts(g1) == oracle::adjacency_counts(g2));
}

TEST_CASE("dot export is capped") {
  const auto g = RotationGraph::from_edge_list(cycle_edges(5), 0);
  CHECK(to_dot(g).find("v0 -- v1") != std::string::npos);
}

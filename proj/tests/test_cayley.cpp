#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "doctest.h"
#include "expander/cayley.hpp"
#include "expander/error.hpp"
#include "expander/rng.hpp"
#include "expander/spectral.hpp"

using namespace expander;

namespace {

// Sorted neighbor list of v, multiplicities kept.
std::vector<std::uint64_t> neighbors(const RotationGraph& g, std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint32_t i = 0; i < g.degree(); ++i) out.push_back(g.head(v, i));
  std::sort(out.begin(), out.end());
  return out;
}

void check_group_axioms(const SemidirectGroup& grp, std::uint64_t seed) {
  Rng rng(seed);
  for (int t = 0; t < 200; ++t) {
    const auto x = grp.element(rng.below(grp.size()));
    const auto y = grp.element(rng.below(grp.size()));
    const auto z = grp.element(rng.below(grp.size()));
    CHECK(grp.mul(grp.mul(x, y), z) == grp.mul(x, grp.mul(y, z)));
    CHECK(grp.mul(x, grp.identity()) == x);
    CHECK(grp.mul(grp.identity(), x) == x);
    CHECK(grp.mul(x, grp.inverse(x)) == grp.identity());
    CHECK(grp.mul(grp.inverse(x), x) == grp.identity());
    CHECK(grp.index(grp.element(grp.index(x))) == grp.index(x));
  }
}

}  // namespace

TEST_CASE("shift group: sizes, action, axioms") {
  const auto grp = SemidirectGroup::shift(5);
  CHECK(grp.dim() == 5);
  CHECK(grp.a_size() == 32);
  CHECK(grp.b_size() == 5);
  CHECK(grp.size() == 160);
  // phi_1 moves coordinate 1 into coordinate 0.
  CHECK(grp.act(1, 0b00010) == 0b00001);
  CHECK(grp.act(0, 0b01101) == 0b01101);
  // composing shifts adds the amounts
  for (std::uint32_t b = 0; b < 5; ++b)
    for (std::uint32_t d = 0; d < 5; ++d)
      for (std::uint64_t a : {0b00001ull, 0b01011ull, 0b11110ull})
        CHECK(grp.act(b, grp.act(d, a)) == grp.act((b + d) % 5, a));
  check_group_axioms(grp, 11);
  CHECK_THROWS_AS(SemidirectGroup::shift(4), Error);
  CHECK_THROWS_AS(SemidirectGroup::shift(31), Error);
  CHECK_THROWS_AS(grp.matrix(0), Error);
}

TEST_CASE("matrix group: enumeration, fractional linear action, axioms") {
  const auto grp = SemidirectGroup::mobius(3);
  CHECK(grp.b_size() == 24);  // p^3 - p
  CHECK(grp.dim() == 4);
  CHECK(grp.size() == 384);
  check_group_axioms(grp, 12);

  // x -> x+1 fixes infinity and rotates the field part
  const std::uint32_t shift_up = grp.matrix_index({1, 1, 0, 1});
  CHECK(grp.act(shift_up, 0b1000) == 0b1000);   // coordinate 3 = infinity
  CHECK(grp.act(shift_up, 0b0001) == 0b0010);   // 0 -> 1
  CHECK(grp.act(shift_up, 0b0100) == 0b0001);   // 2 -> 0
  // x -> -1/x swaps 0 and infinity
  const std::uint32_t neg_inv = grp.matrix_index({0, 1, 2, 0});  // det = -2 = 1 mod 3
  CHECK(grp.act(neg_inv, 0b0001) == 0b1000);
  CHECK(grp.act(neg_inv, 0b1000) == 0b0001);
  // action is a homomorphism into the coordinate permutations
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::uint32_t x = std::uint32_t(rng.below(grp.b_size()));
    const std::uint32_t y = std::uint32_t(rng.below(grp.b_size()));
    const std::uint64_t a = rng.below(grp.a_size());
    CHECK(grp.act(x, grp.act(y, a)) == grp.act(grp.b_mul(x, y), a));
  }
  CHECK_THROWS_AS(grp.matrix_index({1, 1, 1, 1}), Error);  // det 0
  CHECK_THROWS_AS(SemidirectGroup::mobius(11), Error);     // table cap
}

TEST_CASE("orbits") {
  // weight-1 masks form one shift orbit
  const auto o = orbit(0b10000, CayleyFamily::shift, 5);
  CHECK(o == std::vector<std::uint64_t>{1, 2, 4, 8, 16});
  CHECK(orbit(0, CayleyFamily::shift, 5) == std::vector<std::uint64_t>{0});
  // orbit sizes divide the acting group's order
  const auto grp = SemidirectGroup::mobius(3);
  for (std::uint64_t a = 0; a < grp.a_size(); ++a) CHECK(24 % orbit(a, grp).size() == 0);
  CHECK_THROWS_AS(orbit(1 << 5, CayleyFamily::shift, 5), Error);
}

TEST_CASE("zigzag generating set: fixture reaches the 4k ceiling and is symmetric") {
  const auto grp = SemidirectGroup::shift(5);
  const auto reps = fixture_reps(CayleyFamily::shift, 5, 5, ProductKind::zigzag);
  CHECK(reps == std::vector<std::uint64_t>{0b00001, 0b00011, 0b00101, 0b00111, 0b01011});
  const auto gens = zigzag_generating_set(grp, reps);
  CHECK(gens.elems.size() == 20);
  CHECK(gens.symmetric);
  CHECK(!gens.symmetrized);
  for (std::size_t j = 0; j < gens.elems.size(); ++j) {
    REQUIRE(gens.inv_index[j] != GeneratingSet::npos);
    CHECK(grp.mul(gens.elems[j], gens.elems[gens.inv_index[j]]) == grp.identity());
  }
}

TEST_CASE("zigzag generating set: same-orbit reps collapse the multiset") {
  const auto grp = SemidirectGroup::shift(5);
  // 8 = phi_2(1), which aligns the two zero-rotation products
  const auto gens = zigzag_generating_set(grp, {1, 8});
  CHECK(gens.elems.size() == 7);
  CHECK(gens.symmetric);
}

TEST_CASE("replacement generating set: size k+2, symmetric for the shift family") {
  const auto grp = SemidirectGroup::shift(11);
  const auto reps = fixture_reps(CayleyFamily::shift, 11, 13, ProductKind::replacement);
  CHECK(reps.size() == 13);
  const auto gens = replacement_generating_set(grp, reps);
  CHECK(gens.elems.size() == 15);
  CHECK(gens.symmetric);
  // the two rotation generators pair with each other, reps are involutions
  for (std::size_t j = 2; j < gens.elems.size(); ++j) CHECK(gens.inv_index[j] == j);
}

TEST_CASE("rep validation") {
  const auto grp = SemidirectGroup::shift(5);
  CHECK_THROWS_AS(zigzag_generating_set(grp, {0}), Error);
  CHECK_THROWS_AS(zigzag_generating_set(grp, {1, 1}), Error);
  CHECK_THROWS_AS(zigzag_generating_set(grp, {std::uint64_t(1) << 40}), Error);
  CHECK_THROWS_AS(zigzag_generating_set(grp, {}), Error);
}

TEST_CASE("the documented 160-vertex degree-20 build") {
  CayleySpec spec;
  spec.family = CayleyFamily::shift;
  spec.p = 5;
  spec.reps = fixture_reps(CayleyFamily::shift, 5, 5, ProductKind::zigzag);
  spec.product_kind = ProductKind::zigzag;
  const auto build = build_cayley(spec);
  CHECK(build.group_size == 160);
  CHECK(build.degree == 20);
  CHECK(build.two_generates);
  REQUIRE(build.graph.has_value());
  CHECK(build.graph->num_vertices() == 160);
  CHECK(build.graph->degree() == 20);
  CHECK(build.graph->num_edges() == 1600);
  CHECK(build.graph->is_connected());
  // expansion is only probabilistic; record the measurement, assert sanity
  const auto rep = measure_spectrum(*build.graph);
  INFO("measured second eigenvalue ", rep.sigma2);
  CHECK(rep.sigma2 > 0.0);
  CHECK(rep.sigma2 < 1.0);
}

TEST_CASE("left translation is an automorphism (vertex transitivity)") {
  CayleySpec spec;
  spec.family = CayleyFamily::shift;
  spec.p = 3;
  spec.reps = {0b001, 0b011};
  spec.product_kind = ProductKind::zigzag;
  const auto build = build_cayley(spec);
  REQUIRE(build.graph.has_value());
  const auto grp = SemidirectGroup::shift(3);
  Rng rng(77);
  for (int t = 0; t < 8; ++t) {
    const auto h = grp.element(rng.below(grp.size()));
    for (std::uint64_t v = 0; v < build.graph->num_vertices(); ++v) {
      const std::uint64_t hv = grp.index(grp.mul(h, grp.element(v)));
      auto base = neighbors(*build.graph, v);
      for (auto& w : base) w = grp.index(grp.mul(h, grp.element(w)));
      std::sort(base.begin(), base.end());
      CHECK(base == neighbors(*build.graph, hv));
    }
  }
}

TEST_CASE("the documented 22528-vertex builds") {
  CayleySpec zz;
  zz.family = CayleyFamily::shift;
  zz.p = 11;
  zz.reps = fixture_reps(CayleyFamily::shift, 11, 5, ProductKind::zigzag);
  zz.product_kind = ProductKind::zigzag;
  const auto bz = build_cayley(zz);
  CHECK(bz.group_size == 22528);
  CHECK(bz.degree == 20);
  CHECK(bz.two_generates);
  REQUIRE(bz.graph.has_value());
  CHECK(bz.graph->num_edges() == 225280);
  CHECK(bz.graph->is_connected());

  CayleySpec rp;
  rp.family = CayleyFamily::shift;
  rp.p = 11;
  rp.reps = fixture_reps(CayleyFamily::shift, 11, 13, ProductKind::replacement);
  rp.product_kind = ProductKind::replacement;
  const auto br = build_cayley(rp);
  CHECK(br.degree == 15);
  REQUIRE(br.graph.has_value());
  CHECK(br.graph->num_vertices() == 22528);
  CHECK(br.graph->num_edges() == 168960);
  CHECK(br.graph->is_connected());
}

TEST_CASE("matrix-family builds go through the double cover") {
  CayleySpec zz;
  zz.family = CayleyFamily::mobius;
  zz.p = 3;
  zz.reps = fixture_reps(CayleyFamily::mobius, 3, 5, ProductKind::zigzag);
  zz.product_kind = ProductKind::zigzag;
  const auto bz = build_cayley(zz);
  CHECK(bz.group_size == 384);
  CHECK(bz.degree == 20);
  CHECK(!bz.gens.symmetric);
  CHECK(!bz.graph.has_value());
  REQUIRE(bz.cover.has_value());
  CHECK(bz.cover->num_left() == 384);
  CHECK(bz.cover->num_right() == 384);
  CHECK(bz.cover->left_degree() == 20);
  CHECK(bz.cover->right_degree() == 20);
  CHECK(bz.cover->num_edges() == 7680);
  CHECK(bz.cover->is_connected());

  CayleySpec rp;
  rp.family = CayleyFamily::mobius;
  rp.p = 5;
  rp.reps = fixture_reps(CayleyFamily::mobius, 5, 13, ProductKind::replacement);
  rp.product_kind = ProductKind::replacement;
  const auto br = build_cayley(rp);
  CHECK(br.group_size == 7680);
  CHECK(br.degree == 15);
  REQUIRE(br.cover.has_value());
  CHECK(br.cover->num_left() + br.cover->num_right() == 15360);
  CHECK(br.cover->num_edges() == 7680 * 15);
  CHECK(br.cover->is_connected());
}

TEST_CASE("directed edge list shape for an asymmetric set") {
  const auto grp = SemidirectGroup::mobius(3);
  const auto gens = zigzag_generating_set(grp, {1, 2});
  CHECK(!gens.symmetric);
  CHECK_THROWS_AS(cayley_graph(grp, gens), Error);
  const auto el = cayley_digraph(grp, gens);
  CHECK(el.kind == EdgeListKind::directed);
  CHECK(el.n == 384);
  CHECK(el.edges.size() == 384 * gens.elems.size());
  // out-neighbors of v are exactly v*s over the set
  for (std::uint32_t j = 0; j < gens.elems.size(); ++j)
    CHECK(el.edges[j].second == grp.index(grp.mul(grp.element(0), gens.elems[j])));
}

TEST_CASE("random rep draws are deterministic and recorded") {
  CayleySpec spec;
  spec.family = CayleyFamily::shift;
  spec.p = 5;
  spec.k = 3;
  spec.seed = 9;
  spec.product_kind = ProductKind::zigzag;
  const auto b1 = build_cayley(spec);
  const auto b2 = build_cayley(spec);
  REQUIRE(b1.spec.reps.size() == 3);
  CHECK(b1.spec.reps == b2.spec.reps);
  for (const auto r : b1.spec.reps) {
    CHECK(r > 0);
    CHECK(r < 32);
  }
  CHECK(b1.degree == b1.gens.elems.size());
}

TEST_CASE("build validation") {
  CayleySpec spec;
  spec.family = CayleyFamily::shift;
  spec.p = 9;  // not prime
  spec.k = 2;
  CHECK_THROWS_AS(build_cayley(spec), Error);
  spec.p = 5;
  spec.k = 0;
  CHECK_THROWS_AS(build_cayley(spec), Error);
  spec.k = 2;
  spec.product_kind = ProductKind::zigzag_bipartite;
  CHECK_THROWS_AS(build_cayley(spec), Error);
  spec.product_kind = ProductKind::zigzag;
  spec.k = 40;  // only 31 nonzero masks
  CHECK_THROWS_AS(build_cayley(spec), Error);
  // order of 2 mod 7 is 3, not 6
  CayleySpec s7;
  s7.family = CayleyFamily::shift;
  s7.p = 7;
  s7.reps = {1, 3};
  s7.product_kind = ProductKind::replacement;
  CHECK(!build_cayley(s7).two_generates);
}

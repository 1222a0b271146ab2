#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "expander/error.hpp"
#include "expander/iterate.hpp"
#include "expander/random_graphs.hpp"
#include "expander/rotation_graph.hpp"
#include "expander/spectral.hpp"
#include "json.hpp"

using namespace expander;

namespace {

RotationGraph cycle_graph(std::uint64_t n) {
  EdgeList el;
  el.kind = EdgeListKind::undirected;
  el.n = n;
  for (std::uint64_t v = 0; v < n; ++v) el.edges.emplace_back(v, (v + 1) % n);
  el.m = el.edges.size();
  return RotationGraph::from_edge_list(el, 1);
}

RotationGraph complete_graph(std::uint64_t n) {
  EdgeList el;
  el.kind = EdgeListKind::undirected;
  el.n = n;
  for (std::uint64_t u = 0; u < n; ++u)
    for (std::uint64_t v = u + 1; v < n; ++v) el.edges.emplace_back(u, v);
  el.m = el.edges.size();
  return RotationGraph::from_edge_list(el, 3);
}

// (2,2)-biregular single cycle alternating left/right with 512 per side.
BipartiteGraph bipartite_cycle_512() {
  const std::uint64_t n = 512;
  std::vector<std::uint64_t> rot(2 * n);
  for (std::uint64_t i = 0; i < n; ++i) {
    rot[2 * i] = 2 * i;                        // left i port 0 -> right i port 0
    rot[2 * i + 1] = 2 * ((i + 1) % n) + 1;    // left i port 1 -> right i+1 port 1
  }
  return BipartiteGraph(n, n, 2, 2, rot);
}

}  // namespace

TEST_CASE("zigzag family recurrence settles at two fifths when lambda is one fifth") {
  const double fp = recurrence_fixed_point(IterFamily::zigzag_original, 0.2, 0.04);
  CHECK(fp == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(fp <= 2.0 / 5.0 + 1e-9);
}

TEST_CASE("modified family recurrence matches its documented limit") {
  const double lam = 0.296;
  const double fp =
      recurrence_fixed_point(IterFamily::zigzag_modified, lam, lam * lam * lam);
  CHECK(fp == doctest::Approx(0.5499).epsilon(1e-3));
  CHECK(fp <= 0.55);
  CHECK(recurrence_fixed_point(IterFamily::zigzag_modified, 0.0, 0.0) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("replacement family recurrence matches its documented limit") {
  const double fp = recurrence_fixed_point(IterFamily::replacement, 0.2, 0.2, 6);
  CHECK(fp == doctest::Approx(0.8574).epsilon(1e-3));
  CHECK(fp <= 0.86);
}

TEST_CASE("recurrences blow up past their stability ranges") {
  CHECK_THROWS_AS(
      (void)recurrence_fixed_point(IterFamily::zigzag_original, 0.5, 0.25), Error);
  CHECK_THROWS_AS(
      (void)recurrence_fixed_point(IterFamily::zigzag_modified, 0.6, 0.216), Error);
}

TEST_CASE("squared replacement variant pins at one over the whole grid") {
  // Swapping the fourth power for a square leaves no room below 1: the bound
  // sequence creeps to the trivial fixed point for every grid choice.
  for (int l = 5; l <= 30; l += 5) {
    const double lam = l / 100.0;
    for (std::uint32_t d = 6; d <= 20; ++d) {
      CHECK_THROWS_AS(
          (void)recurrence_fixed_point(IterFamily::replacement, lam, lam, d, true),
          Error);
    }
  }
  // The fourth-power version stays below 1 on the reference point.
  CHECK_NOTHROW((void)recurrence_fixed_point(IterFamily::replacement, 0.2, 0.2, 6));
}

TEST_CASE("zigzag trace has the closed-form sizes and degrees") {
  const RotationGraph h = cycle_graph(16);
  IterateOptions opt;
  opt.levels = 2;
  const IterationTrace tr = iterate_zigzag(h, opt);
  REQUIRE(tr.levels.size() == 2);
  CHECK(tr.family == IterFamily::zigzag_original);
  // An even cycle is bipartite: its -1 eigenvalue makes sigma2 exactly 1,
  // and the squared seed splits into two components, recorded as 1 as well.
  CHECK(tr.lambda_h == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(tr.preconditions_hold);
  CHECK(tr.levels[0].n_left == 16);
  CHECK(tr.levels[0].degree_left == 4);
  CHECK(tr.levels[1].n_left == 256);
  CHECK(tr.levels[1].degree_left == 4);
  for (const LevelRecord& r : tr.levels) {
    CHECK(r.constructed);
    REQUIRE(r.measured_lambda.has_value());
    CHECK(*r.measured_lambda <= r.lambda_bound + 1e-6);
  }
  CHECK(*tr.levels[0].measured_lambda ==
        doctest::Approx(tr.levels[0].lambda_bound).epsilon(1e-8));
}

TEST_CASE("zigzag level one bound is tight on a four-regular seed") {
  // Odd degrees cannot seed this family (D^4 * D is odd), so 4 is the
  // smallest non-degenerate choice.
  const RotationGraph h = random_regular(256, 4, 11);
  IterateOptions opt;
  opt.levels = 2;
  // The level-2 spectrum is a tight cluster the iterative solver cannot
  // split within its budget; skip it rather than burn the budget.
  opt.measure_budget = 4096;
  const IterationTrace tr = iterate_zigzag(h, opt);
  CHECK(tr.lambda_h < 1.0);
  CHECK(tr.levels[0].n_left == 256);
  CHECK(tr.levels[0].degree_left == 16);
  CHECK(tr.levels[1].n_left == 65536);
  CHECK(tr.levels[1].degree_left == 16);
  // The level-1 graph is exactly the squared seed: eigenvalues square, so
  // the recurrence's starting bound is attained.
  REQUIRE(tr.levels[0].measured_lambda.has_value());
  CHECK(*tr.levels[0].measured_lambda ==
        doctest::Approx(tr.lambda_h * tr.lambda_h).epsilon(1e-6));
  CHECK_FALSE(tr.levels[1].measured_lambda.has_value());
}

TEST_CASE("zigzag bound sequence follows the recurrence arithmetic") {
  const RotationGraph h = cycle_graph(16);
  IterateOptions opt;
  opt.levels = 3;
  opt.lambda_h = 0.2;
  opt.measure = false;
  const IterationTrace tr = iterate_zigzag(h, opt);
  CHECK(tr.lambda_h == 0.2);
  CHECK(tr.preconditions_hold);
  CHECK(tr.levels[0].lambda_bound == doctest::Approx(0.04).epsilon(1e-12));
  CHECK(tr.levels[1].lambda_bound == doctest::Approx(0.2416).epsilon(1e-12));
  CHECK(tr.levels[2].lambda_bound ==
        doctest::Approx(0.2416 * 0.2416 + 0.24).epsilon(1e-12));
  for (const LevelRecord& r : tr.levels) CHECK(r.lambda_bound <= tr.ceiling + 1e-9);
}

TEST_CASE("zigzag budget cuts construction but keeps the analytic tail") {
  const RotationGraph h = cycle_graph(16);
  IterateOptions opt;
  opt.levels = 3;
  opt.vertex_budget = 300;
  const IterationTrace tr = iterate_zigzag(h, opt);
  REQUIRE(tr.levels.size() == 3);
  CHECK(tr.levels[1].constructed);
  CHECK_FALSE(tr.levels[2].constructed);
  CHECK_FALSE(tr.levels[2].measured_lambda.has_value());
  CHECK(tr.levels[2].n_left == 4096);
  CHECK(tr.levels[2].lambda_bound > 0.0);
}

TEST_CASE("zigzag seed size is validated and deep traces overflow cleanly") {
  CHECK_THROWS_AS((void)iterate_zigzag(cycle_graph(15), {}), Error);
  const RotationGraph h = cycle_graph(16);
  IterateOptions opt;
  opt.levels = 16;  // 16^16 = 2^64 vertex count cannot be represented
  opt.measure = false;
  opt.vertex_budget = 1;
  CHECK_THROWS_AS((void)iterate_zigzag(h, opt), Error);
}

TEST_CASE("modified family trace matches the two-sided closed forms") {
  const BipartiteGraph h = bipartite_cycle_512();
  IterateOptions opt;
  opt.levels = 2;
  const IterationTrace tr = iterate_zigzag_modified(h, opt);
  REQUIRE(tr.levels.size() == 2);
  CHECK_FALSE(tr.preconditions_hold);  // union-of-cycles seeds are not expanders
  CHECK(tr.levels[0].n_left == 512);
  CHECK(tr.levels[0].n_right == 512);
  CHECK(tr.levels[0].degree_left == 8);
  CHECK(tr.levels[0].degree_right == 8);
  CHECK(tr.levels[1].n_left == (std::uint64_t(1) << 18));
  CHECK(tr.levels[1].n_right == (std::uint64_t(1) << 18));
  CHECK(tr.levels[1].degree_left == 8);
  CHECK(tr.levels[1].degree_right == 8);
  CHECK(tr.levels[0].constructed);
  CHECK(tr.levels[1].constructed);
  // Level 1 is the cubed seed: singular values cube exactly.
  REQUIRE(tr.levels[0].measured_lambda.has_value());
  CHECK(*tr.levels[0].measured_lambda ==
        doctest::Approx(tr.lambda_h * tr.lambda_h * tr.lambda_h).epsilon(1e-8));
  // Level 2 exceeds the measurement budget by design.
  CHECK_FALSE(tr.levels[1].measured_lambda.has_value());
}

TEST_CASE("modified family rejects mis-sized seeds") {
  const BipartiteGraph wrong = random_biregular(64, 64, 2, 2, 5);
  CHECK_THROWS_AS((void)iterate_zigzag_modified(wrong, {}), Error);
}

TEST_CASE("replacement family trace constructs two levels and bounds them") {
  const RotationGraph g1 = complete_graph(8);  // (8, 7), lambda = 1/7
  const RotationGraph h = random_regular(2401, 6, 17);
  IterateOptions opt;
  opt.levels = 3;
  opt.measure_budget = 8192;  // the level-2 cluster defeats power iteration
  const IterationTrace tr = iterate_replacement(g1, h, opt);
  REQUIRE(tr.levels.size() == 3);
  CHECK(tr.lambda_g1 == doctest::Approx(1.0 / 7.0).epsilon(1e-6));
  CHECK(tr.lambda_h > 0.2);  // degree-6 graphs cannot reach the precondition
  CHECK_FALSE(tr.preconditions_hold);
  CHECK(tr.levels[0].n_left == 8);
  CHECK(tr.levels[0].degree_left == 7);
  CHECK(tr.levels[1].n_left == 8 * 2401);
  CHECK(tr.levels[1].degree_left == 7);
  CHECK(tr.levels[1].constructed);
  CHECK(tr.levels[2].n_left == std::uint64_t(8) * 2401 * 2401);
  CHECK_FALSE(tr.levels[2].constructed);
  CHECK_FALSE(tr.levels[1].measured_lambda.has_value());
}

TEST_CASE("replacement level two is measured densely on a tiny pairing") {
  // Odd base degree forces half-loops through the fourth power; the product
  // carries them and the dense solver still certifies the bound.
  IterateOptions opt;
  opt.levels = 2;
  const IterationTrace tr =
      iterate_replacement(complete_graph(4), cycle_graph(81), opt);
  CHECK(tr.levels[0].lambda_bound == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(tr.levels[1].n_left == 324);
  CHECK(tr.levels[1].degree_left == 3);
  REQUIRE(tr.levels[1].measured_lambda.has_value());
  CHECK(*tr.levels[1].measured_lambda <= tr.levels[1].lambda_bound + 1e-6);
  CHECK(*tr.levels[1].measured_lambda == doctest::Approx(0.977056).epsilon(1e-3));
}

TEST_CASE("replacement family validates the degree pairing") {
  const RotationGraph h = random_regular(2401, 6, 17);
  CHECK_THROWS_AS((void)iterate_replacement(complete_graph(7), h, {}), Error);
  const RotationGraph bad_cloud = random_regular(2400, 6, 17);
  CHECK_THROWS_AS((void)iterate_replacement(complete_graph(8), bad_cloud, {}), Error);
}

TEST_CASE("trace serializes to parseable json") {
  const RotationGraph h = cycle_graph(16);
  IterateOptions opt;
  opt.levels = 2;
  opt.seed = 99;
  const IterationTrace tr = iterate_zigzag(h, opt);
  const auto j = nlohmann::json::parse(tr.to_json());
  CHECK(j["family"] == "zigzag_original");
  CHECK(j["seed"] == 99);
  CHECK(j["levels"].size() == 2);
  CHECK(j["levels"][1]["n_left"] == 256);
}

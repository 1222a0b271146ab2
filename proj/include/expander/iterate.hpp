#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expander/rotation_graph.hpp"

namespace expander {

enum class IterFamily { zigzag_original, zigzag_modified, replacement };

const char* iter_family_name(IterFamily f);

struct LevelRecord {
  std::uint32_t level = 0;  // 1-based
  std::uint64_t n_left = 0;
  std::uint64_t n_right = 0;  // 0 for the non-bipartite families
  std::uint64_t degree_left = 0;
  std::uint64_t degree_right = 0;
  double lambda_bound = 0.0;
  std::optional<double> measured_lambda;  // absent beyond budget or unconverged
  bool constructed = false;
};

struct IterationTrace {
  IterFamily family = IterFamily::zigzag_original;
  double lambda_h = 0.0;   // seed lambda used by the bound recurrence
  double lambda_g1 = 0.0;  // replacement base graph; unused elsewhere
  bool preconditions_hold = false;
  double ceiling = 0.0;  // family's asserted limit when preconditions hold
  std::uint64_t seed = 0;
  std::vector<LevelRecord> levels;

  std::string to_json() const;
};

struct IterateOptions {
  std::uint32_t levels = 2;
  // Levels whose vertex count exceeds this are traced analytically (bounds
  // only); construction and measurement stop there.
  std::uint64_t vertex_budget = std::uint64_t(1) << 20;
  bool measure = true;
  // Constructed levels larger than this skip the spectral check (iterative
  // solvers on near-degenerate spectra dominate runtime otherwise).
  std::uint64_t measure_budget = std::uint64_t(1) << 16;
  // Overrides for the bound recurrence; measured values are used when absent.
  std::optional<double> lambda_h;
  std::optional<double> lambda_g1;
  std::uint64_t seed = 0;  // provenance for generated seed graphs
};

// Square-and-compose family: G_1 = h^2, G_{i+1} = G_i^2 (Z) h. h must be a
// (D^4, D) graph; level i sits on D^{4i} vertices with degree D^2 and bound
// x -> x^2 + l + l^2 from l^2. Preconditions hold when lambda(h) <= 1/5,
// giving the 2/5 ceiling.
IterationTrace iterate_zigzag(const RotationGraph& h, const IterateOptions& opt = {});

// Cube-and-compose two-sided family: G_1 = h^3, G_{i+1} = G_i^3 (ZM) h.
// h must be (c2, d2)-biregular on (c2^4 d2^5, c2^5 d2^4); level i sits on
// (c2^{4i} d2^{5i}, c2^{4i+1} d2^{5i-1}) with degrees (c2^2 d2, c2 d2^2) and
// bound x -> x^3 + l + l^2 from l^3. Preconditions hold when
// lambda(h) <= 0.296, giving the 0.55 ceiling.
IterationTrace iterate_zigzag_modified(const BipartiteGraph& h,
                                       const IterateOptions& opt = {});

// Fourth-power-and-replace family: G_{i+1} = G_i^4 (R) h. g1 must be
// (N, d+1)-regular and h ((d+1)^4, d)-regular; level i sits on
// N (d+1)^{4(i-1)} vertices with degree d+1 and bound
// x -> (p + (1-p) f(x^4, l))^{1/3}. Preconditions hold when both seed
// lambdas are <= 0.2 and d >= 6, giving the 0.86 ceiling.
IterationTrace iterate_replacement(const RotationGraph& g1, const RotationGraph& h,
                                   const IterateOptions& opt = {});

// One application of a family's bound recurrence to x. d is the replacement
// cloud degree (ignored elsewhere); squared_variant swaps the replacement
// family's fourth power for a square.
double recurrence_step(IterFamily family, double x, double lambda_h,
                       std::uint32_t d = 0, bool squared_variant = false);

// Iterates from start until |x_{i+1} - x_i| < 1e-10 (at most 1e5 steps).
// Throws Divergent when the sequence leaves [0, 1) for good: above 1, or
// pinned against 1 with no expansion left.
double recurrence_fixed_point(IterFamily family, double lambda_h, double start,
                              std::uint32_t d = 0, bool squared_variant = false);

}  // namespace expander

#include "expander/iterate.hpp"

#include <cmath>
#include <utility>

#include "expander/error.hpp"
#include "expander/products.hpp"
#include "expander/spectral.hpp"
#include "json.hpp"

namespace expander {

const char* iter_family_name(IterFamily f) {
  switch (f) {
    case IterFamily::zigzag_original:
      return "zigzag_original";
    case IterFamily::zigzag_modified:
      return "zigzag_modified";
    case IterFamily::replacement:
      return "replacement";
  }
  return "unknown";
}

namespace {

constexpr double kZigzagCeiling = 2.0 / 5.0;
constexpr double kModifiedCeiling = 0.55;
constexpr double kReplacementCeiling = 0.86;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > (std::uint64_t(1) << 62) / b)
    throw Error(Errc::level_budget, "level vertex count overflows");
  return a * b;
}

std::uint64_t pow_u64(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

// Spectral measurement is best-effort: iterative solvers may hit their
// budget on near-degenerate levels, which the trace records as absent.
template <class G>
std::optional<double> try_measure(const G& g) {
  try {
    return measure_spectrum(g).sigma2;
  } catch (const Error&) {
    return std::nullopt;
  }
}

void require_positive_levels(const IterateOptions& opt) {
  if (opt.levels == 0) throw Error(Errc::bad_input, "levels must be positive");
}

}  // namespace

std::string IterationTrace::to_json() const {
  nlohmann::ordered_json j;
  j["family"] = iter_family_name(family);
  j["lambda_h"] = lambda_h;
  if (family == IterFamily::replacement) j["lambda_g1"] = lambda_g1;
  j["preconditions_hold"] = preconditions_hold;
  j["ceiling"] = ceiling;
  j["seed"] = seed;
  j["levels"] = nlohmann::ordered_json::array();
  for (const LevelRecord& r : levels) {
    nlohmann::ordered_json l;
    l["level"] = r.level;
    l["n_left"] = r.n_left;
    if (r.n_right != 0) l["n_right"] = r.n_right;
    l["degree_left"] = r.degree_left;
    if (r.degree_right != 0) l["degree_right"] = r.degree_right;
    l["lambda_bound"] = r.lambda_bound;
    if (r.measured_lambda)
      l["measured_lambda"] = *r.measured_lambda;
    else
      l["measured_lambda"] = nullptr;
    l["constructed"] = r.constructed;
    j["levels"].push_back(l);
  }
  return j.dump(2);
}

double recurrence_step(IterFamily family, double x, double lambda_h,
                       std::uint32_t d, bool squared_variant) {
  switch (family) {
    case IterFamily::zigzag_original:
      return x * x + lambda_h + lambda_h * lambda_h;
    case IterFamily::zigzag_modified:
      return x * x * x + lambda_h + lambda_h * lambda_h;
    case IterFamily::replacement: {
      if (d == 0) throw Error(Errc::bad_input, "replacement recurrence needs d");
      const double inner = squared_variant ? x * x : x * x * x * x;
      return replacement_bound(inner, lambda_h, d, FVariant::sqrt_form);
    }
  }
  throw Error(Errc::bad_input, "unknown family");
}

double recurrence_fixed_point(IterFamily family, double lambda_h, double start,
                              std::uint32_t d, bool squared_variant) {
  double x = start;
  for (int i = 0; i < 100000; ++i) {
    const double next = recurrence_step(family, x, lambda_h, d, squared_variant);
    if (next > 1.0) throw Error(Errc::divergent, "bound sequence exceeds 1");
    if (std::abs(next - x) < 1e-10) {
      // A limit glued to 1 certifies nothing; the family is not expanding.
      if (next >= 1.0 - 1e-6) throw Error(Errc::divergent, "bound sequence pinned at 1");
      return next;
    }
    x = next;
  }
  if (x >= 1.0 - 1e-3) throw Error(Errc::divergent, "bound sequence pinned at 1");
  throw Error(Errc::no_convergence, "recurrence did not settle");
}

IterationTrace iterate_zigzag(const RotationGraph& h, const IterateOptions& opt) {
  require_positive_levels(opt);
  const std::uint64_t d = h.degree();
  if (d < 2 || h.num_vertices() != d * d * d * d)
    throw Error(Errc::size_mismatch, "seed must sit on degree^4 vertices");

  IterationTrace tr;
  tr.family = IterFamily::zigzag_original;
  tr.seed = opt.seed;
  tr.lambda_h = opt.lambda_h ? *opt.lambda_h : measure_spectrum(h).sigma2;
  tr.preconditions_hold = tr.lambda_h <= 1.0 / 5.0 + 1e-12;
  tr.ceiling = kZigzagCeiling;

  std::optional<RotationGraph> cur;
  double bound = tr.lambda_h * tr.lambda_h;  // level 1 is the seed squared
  for (std::uint32_t i = 1; i <= opt.levels; ++i) {
    LevelRecord rec;
    rec.level = i;
    rec.n_left = pow_u64(h.num_vertices(), i);
    rec.degree_left = d * d;
    rec.lambda_bound = bound;
    if (rec.n_left <= opt.vertex_budget) {
      if (i == 1)
        cur = square(h);
      else if (cur)
        cur = zigzag(square(*cur), h);
      if (cur) {
        rec.constructed = true;
        if (opt.measure && rec.n_left <= opt.measure_budget)
          rec.measured_lambda = try_measure(*cur);
      }
    } else {
      cur.reset();
    }
    tr.levels.push_back(std::move(rec));
    bound = recurrence_step(IterFamily::zigzag_original, bound, tr.lambda_h);
  }
  return tr;
}

IterationTrace iterate_zigzag_modified(const BipartiteGraph& h,
                                       const IterateOptions& opt) {
  require_positive_levels(opt);
  const std::uint64_t c2 = h.left_degree(), d2 = h.right_degree();
  const std::uint64_t step_l = pow_u64(c2, 4) * pow_u64(d2, 5);
  const std::uint64_t step_r = pow_u64(c2, 5) * pow_u64(d2, 4);
  if (c2 < 2 || d2 < 2 || h.num_left() != step_l || h.num_right() != step_r)
    throw Error(Errc::size_mismatch,
                "seed sides must be (c^4 d^5, c^5 d^4) for degrees (c, d)");

  IterationTrace tr;
  tr.family = IterFamily::zigzag_modified;
  tr.seed = opt.seed;
  tr.lambda_h = opt.lambda_h ? *opt.lambda_h : measure_spectrum(h).sigma2;
  tr.preconditions_hold = tr.lambda_h <= 0.296 + 1e-12;
  tr.ceiling = kModifiedCeiling;

  std::optional<BipartiteGraph> cur;
  double bound = tr.lambda_h * tr.lambda_h * tr.lambda_h;  // level 1 is the cube
  for (std::uint32_t i = 1; i <= opt.levels; ++i) {
    LevelRecord rec;
    rec.level = i;
    rec.n_left = pow_u64(step_l, i);
    rec.n_right = checked_mul(pow_u64(c2, 4 * i + 1), pow_u64(d2, 5 * i - 1));
    rec.degree_left = c2 * c2 * d2;
    rec.degree_right = c2 * d2 * d2;
    rec.lambda_bound = bound;
    if (rec.n_left + rec.n_right <= opt.vertex_budget) {
      if (i == 1)
        cur = bipartite_power(h, 3);
      else if (cur)
        cur = zigzag_modified(bipartite_power(*cur, 3), h);
      if (cur) {
        rec.constructed = true;
        if (opt.measure && rec.n_left + rec.n_right <= opt.measure_budget)
          rec.measured_lambda = try_measure(*cur);
      }
    } else {
      cur.reset();
    }
    tr.levels.push_back(std::move(rec));
    bound = recurrence_step(IterFamily::zigzag_modified, bound, tr.lambda_h);
  }
  return tr;
}

IterationTrace iterate_replacement(const RotationGraph& g1, const RotationGraph& h,
                                   const IterateOptions& opt) {
  require_positive_levels(opt);
  const std::uint32_t d = h.degree();
  const std::uint64_t cloud = pow_u64(std::uint64_t(d) + 1, 4);
  if (d < 1 || g1.degree() != d + 1 || h.num_vertices() != cloud)
    throw Error(Errc::size_mismatch,
                "base must be (N, d+1)-regular with the cloud on (d+1)^4 vertices");

  IterationTrace tr;
  tr.family = IterFamily::replacement;
  tr.seed = opt.seed;
  tr.lambda_h = opt.lambda_h ? *opt.lambda_h : measure_spectrum(h).sigma2;
  tr.lambda_g1 = opt.lambda_g1 ? *opt.lambda_g1 : measure_spectrum(g1).sigma2;
  tr.preconditions_hold =
      tr.lambda_h <= 0.2 + 1e-12 && tr.lambda_g1 <= 0.2 + 1e-12 && d >= 6;
  tr.ceiling = kReplacementCeiling;

  std::optional<RotationGraph> cur = g1;
  double bound = tr.lambda_g1;  // level 1 is the base graph itself
  for (std::uint32_t i = 1; i <= opt.levels; ++i) {
    LevelRecord rec;
    rec.level = i;
    rec.n_left = checked_mul(g1.num_vertices(), pow_u64(cloud, i - 1));
    rec.degree_left = d + 1;
    rec.lambda_bound = bound;
    if (rec.n_left <= opt.vertex_budget) {
      if (i > 1 && cur) cur = replacement(square(square(*cur)), h);
      if (cur) {
        rec.constructed = true;
        if (opt.measure && rec.n_left <= opt.measure_budget)
          rec.measured_lambda = try_measure(*cur);
      }
    } else {
      cur.reset();
    }
    tr.levels.push_back(std::move(rec));
    bound = recurrence_step(IterFamily::replacement, bound, tr.lambda_h, d);
  }
  return tr;
}

}  // namespace expander

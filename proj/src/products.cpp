#include "expander/products.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "expander/error.hpp"
#include "expander/spectral.hpp"
#include "json.hpp"

namespace expander {

namespace {

constexpr std::uint64_t kDartBudget = std::uint64_t(1) << 33;
constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

void check_cloud_size(const RotationGraph& g1, const RotationGraph& g2) {
  if (g2.num_vertices() != g1.degree())
    throw Error(Errc::size_mismatch, "cloud graph must have exactly g1.degree() vertices");
}

std::uint64_t inf_or(std::optional<std::uint64_t> v) { return v ? *v : kInf; }

// Saturating product so kInf stays absorbing.
std::uint64_t mul_inf(std::uint64_t a, std::uint64_t b) {
  if (a == kInf || b == kInf) return kInf;
  if (b != 0 && a > kInf / b) return kInf;
  return a * b;
}

std::uint64_t add_inf(std::uint64_t a, std::uint64_t b) {
  if (a == kInf || b == kInf) return kInf;
  return a + b;
}

}  // namespace

const char* product_kind_name(ProductKind k) {
  switch (k) {
    case ProductKind::zigzag: return "zigzag";
    case ProductKind::replacement: return "replacement";
    case ProductKind::zigzag_bipartite: return "zigzag_bipartite";
    case ProductKind::zigzag_modified: return "zigzag_modified";
  }
  return "unknown";
}

RotationGraph zigzag(const RotationGraph& g1, const RotationGraph& g2) {
  check_cloud_size(g1, g2);
  const std::uint64_t n1 = g1.num_vertices();
  const std::uint32_t d1 = g1.degree();
  const std::uint32_t d2 = g2.degree();
  const std::uint64_t n = n1 * d1;
  const std::uint32_t deg = d2 * d2;
  if (n * deg > kDartBudget) throw Error(Errc::too_large, "product dart count exceeds budget");
  std::vector<std::uint64_t> rot(n * deg);
  for (std::uint64_t v = 0; v < n1; ++v)
    for (std::uint32_t k = 0; k < d1; ++k)
      for (std::uint32_t i = 0; i < d2; ++i) {
        const auto [k1, i1] = g2.rot(k, i);  // zig
        const auto [w, l] = g1.rot(v, std::uint32_t(k1));
        for (std::uint32_t j = 0; j < d2; ++j) {
          const auto [l1, j1] = g2.rot(l, j);  // zag
          rot[(v * d1 + k) * deg + i * d2 + j] = (w * d1 + l1) * deg + (j1 * d2 + i1);
        }
      }
  return RotationGraph(n, deg, rot);
}

RotationGraph replacement(const RotationGraph& g1, const RotationGraph& g2) {
  check_cloud_size(g1, g2);
  const std::uint64_t n1 = g1.num_vertices();
  const std::uint32_t d1 = g1.degree();
  const std::uint32_t d2 = g2.degree();
  const std::uint64_t n = n1 * d1;
  const std::uint32_t deg = d2 + 1;
  if (n * deg > kDartBudget) throw Error(Errc::too_large, "product dart count exceeds budget");
  std::vector<std::uint64_t> rot(n * deg);
  for (std::uint64_t v = 0; v < n1; ++v)
    for (std::uint32_t k = 0; k < d1; ++k) {
      for (std::uint32_t p = 0; p < d2; ++p) {
        const auto [k1, p1] = g2.rot(k, p);
        rot[(v * d1 + k) * deg + p] = (v * d1 + k1) * deg + p1;
      }
      const auto [w, l] = g1.rot(v, k);
      rot[(v * d1 + k) * deg + d2] = (w * d1 + l) * deg + d2;
    }
  // A half-loop dart of g1 makes its long edge a half-loop in the product
  // (odd-degree walk powers carry one per vertex).
  return RotationGraph(n, deg, rot, g1.num_half_loops() > 0);
}

BipartiteGraph zigzag_bipartite(const BipartiteGraph& g1, const BipartiteGraph& g2) {
  const std::uint64_t n = g1.num_left(), m = g1.num_right();
  const std::uint32_t c1 = g1.left_degree(), d1 = g1.right_degree();
  if (g2.num_left() != d1 || g2.num_right() != c1)
    throw Error(Errc::size_mismatch, "cloud sides must be (d1, c1)");
  const std::uint32_t c2 = g2.left_degree(), d2 = g2.right_degree();
  if (std::uint64_t(d1) * c2 != std::uint64_t(c1) * d2)
    throw Error(Errc::degree_incompatible, "d1*c2 must equal c1*d2");
  const std::uint64_t nl = n * d1, nr = m * c1;
  const std::uint32_t lc = c2 * c2, rd = d2 * d2;
  if (nl * lc > kDartBudget) throw Error(Errc::too_large, "product dart count exceeds budget");
  std::vector<std::uint64_t> rot(nl * lc);
  for (std::uint64_t v = 0; v < n; ++v)
    for (std::uint32_t k = 0; k < d1; ++k)
      for (std::uint32_t i = 0; i < c2; ++i) {
        const auto [b, i1] = g2.rot(k, i);  // zig lands on the W2 side
        const auto [w, lp] = g1.rot(v, std::uint32_t(b));
        for (std::uint32_t j = 0; j < c2; ++j) {
          const auto [l, j1] = g2.rot(std::uint32_t(lp), j);  // zag
          rot[(v * d1 + k) * lc + i * c2 + j] = (w * c1 + l) * rd + (j1 * d2 + i1);
        }
      }
  return BipartiteGraph(nl, nr, lc, rd, rot);
}

BipartiteGraph zigzag_modified(const BipartiteGraph& g1, const BipartiteGraph& g2) {
  const std::uint64_t n = g1.num_left(), m = g1.num_right();
  const std::uint32_t c1 = g1.left_degree(), d1 = g1.right_degree();
  if (g2.num_left() != d1 || g2.num_right() != c1)
    throw Error(Errc::size_mismatch, "cloud sides must be (d1, c1)");
  const std::uint32_t c2 = g2.left_degree(), d2 = g2.right_degree();
  if (std::uint64_t(d1) * c2 != std::uint64_t(c1) * d2)
    throw Error(Errc::degree_incompatible, "d1*c2 must equal c1*d2");
  const std::uint64_t nl = n * d1, nr = m * d1;
  const std::uint32_t lc = c2 * c2 * d2, rd = c2 * d2 * d2;
  if (nl * lc > kDartBudget) throw Error(Errc::too_large, "product dart count exceeds budget");
  std::vector<std::uint64_t> rot(nl * lc);
  for (std::uint64_t v = 0; v < n; ++v)
    for (std::uint32_t k = 0; k < d1; ++k)
      for (std::uint32_t i = 0; i < c2; ++i) {
        const auto [b, i1] = g2.rot(k, i);  // zig
        const auto [w, lp] = g1.rot(v, std::uint32_t(b));
        for (std::uint32_t j = 0; j < c2; ++j) {
          const auto [l, j1] = g2.rot(std::uint32_t(lp), j);  // zag
          for (std::uint32_t j2 = 0; j2 < d2; ++j2) {
            const auto [a, j2p] = g2.rinv(l, j2);  // step back to the V2 side
            rot[(v * d1 + k) * lc + (i * c2 + j) * d2 + j2] =
                (w * d1 + a) * rd + (j2p * d2 + j1) * d2 + i1;
          }
        }
      }
  return BipartiteGraph(nl, nr, lc, rd, rot);
}

double zigzag_bound(double lambda1, double lambda2) {
  if (!(lambda1 >= 0.0 && lambda1 <= 1.0 && lambda2 >= 0.0 && lambda2 <= 1.0))
    throw Error(Errc::out_of_range, "spectral arguments must lie in [0,1]");
  return lambda1 + lambda2 + lambda2 * lambda2;
}

double replacement_bound(double lambda1, double lambda2, std::uint32_t d2, FVariant v) {
  if (!(lambda1 >= 0.0 && lambda1 <= 1.0 && lambda2 >= 0.0 && lambda2 <= 1.0))
    throw Error(Errc::out_of_range, "spectral arguments must lie in [0,1]");
  if (d2 < 1) throw Error(Errc::out_of_range, "cloud degree must be at least 1");
  const double dd = double(d2);
  const double p = dd * dd / ((dd + 1.0) * (dd + 1.0) * (dd + 1.0));
  double f;
  if (v == FVariant::sum) {
    f = lambda1 + lambda2 + lambda2 * lambda2;
  } else {
    const double q = 1.0 - lambda2 * lambda2;
    f = 0.5 * q * lambda1 + 0.5 * std::sqrt(q * q * lambda1 * lambda1 + 4.0 * lambda2 * lambda2);
  }
  return std::cbrt(p + (1.0 - p) * f);
}

namespace {

ProductCertificate certify(ProductKind kind, double l1, double l2, double measured,
                           std::optional<std::uint64_t> product_girth, bool cloud_premise,
                           std::uint32_t cloud_degree) {
  ProductCertificate c;
  c.product_kind = kind;
  c.lambda1 = l1;
  c.lambda2_small = l2;
  c.measured_lambda = measured;
  const double l1c = std::clamp(l1, 0.0, 1.0), l2c = std::clamp(l2, 0.0, 1.0);
  c.bound = kind == ProductKind::replacement
                ? replacement_bound(l1c, l2c, cloud_degree, FVariant::sqrt_form)
                : zigzag_bound(l1c, l2c);
  c.bound_ok = measured <= c.bound + 1e-6;
  c.girth = product_girth.value_or(0);
  if (kind != ProductKind::replacement)
    c.girth_bound_ok = !cloud_premise || (product_girth && *product_girth == 4);
  return c;
}

}  // namespace

ProductCertificate verify_product(const RotationGraph& product, const RotationGraph& g1,
                                  const RotationGraph& g2, ProductKind kind, std::uint64_t seed) {
  if (kind != ProductKind::zigzag && kind != ProductKind::replacement)
    throw Error(Errc::bad_input, "one-sided products only for regular graphs");
  const double l1 = measure_spectrum(g1, SpectralMethod::automatic, seed).sigma2;
  const double l2 = measure_spectrum(g2, SpectralMethod::automatic, seed + 1).sigma2;
  const double ml = measure_spectrum(product, SpectralMethod::automatic, seed + 2).sigma2;
  const auto pg = girth(product);
  const bool premise = g2.num_vertices() > 2 && g2.is_connected();
  ProductCertificate c = certify(kind, l1, l2, ml, pg, premise, g2.degree());
  if (kind == ProductKind::replacement) {
    const std::uint64_t g1g = inf_or(girth(g1)), g2g = inf_or(girth(g2));
    const std::uint64_t t1 = inf_or(diameter(g1)), t2 = inf_or(diameter(g2));
    const std::uint64_t pgv = inf_or(pg);
    const std::uint64_t lower = std::min(g2g, mul_inf(2, g1g));
    const std::uint64_t upper = std::min(g2g, mul_inf(g1g, t2));
    c.girth_bound_ok = lower <= pgv && pgv <= upper;
    const std::uint64_t pt = inf_or(diameter(product));
    c.diameter = pt == kInf ? 0 : pt;
    c.diameter_lower_ok = std::max(t2, mul_inf(2, t1)) <= pt;
    c.diameter_upper_sum_ok = pt <= add_inf(t1, t2);
    c.diameter_upper_product_ok = pt <= mul_inf(t1, t2);
  }
  return c;
}

ProductCertificate verify_product(const BipartiteGraph& product, const BipartiteGraph& g1,
                                  const BipartiteGraph& g2, ProductKind kind, std::uint64_t seed) {
  if (kind != ProductKind::zigzag_bipartite && kind != ProductKind::zigzag_modified)
    throw Error(Errc::bad_input, "two-sided products only for biregular graphs");
  const double l1 = measure_spectrum(g1, SpectralMethod::automatic, seed).sigma2;
  const double l2 = measure_spectrum(g2, SpectralMethod::automatic, seed + 1).sigma2;
  const double ml = measure_spectrum(product, SpectralMethod::automatic, seed + 2).sigma2;
  const bool premise = g2.num_left() + g2.num_right() > 2 && g2.is_connected();
  return certify(kind, l1, l2, ml, girth(product), premise, g2.right_degree());
}

std::string ProductCertificate::to_json() const {
  nlohmann::ordered_json j;
  j["product_kind"] = product_kind_name(product_kind);
  j["lambda1"] = lambda1;
  j["lambda2_small"] = lambda2_small;
  j["measured_lambda"] = measured_lambda;
  j["bound"] = bound;
  j["bound_ok"] = bound_ok;
  j["girth"] = girth;
  j["girth_bound_ok"] = girth_bound_ok;
  if (product_kind == ProductKind::replacement) {
    j["diameter"] = diameter;
    j["diameter_lower_ok"] = diameter_lower_ok;
    j["diameter_upper_sum_ok"] = diameter_upper_sum_ok;
    j["diameter_upper_product_ok"] = diameter_upper_product_ok;
  }
  return j.dump(2);
}

}  // namespace expander

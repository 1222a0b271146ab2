#pragma once

#include <cstdint>
#include <string>

#include "expander/rotation_graph.hpp"

namespace expander {

enum class ProductKind { zigzag, replacement, zigzag_bipartite, zigzag_modified };

const char* product_kind_name(ProductKind k);

// Three-step walk product: a zig inside the cloud, a deterministic long edge,
// a zag inside the destination cloud. g2 must have exactly g1.degree()
// vertices. Result: g1.num_vertices()*g1.degree() vertices, degree
// g2.degree()^2. Port of the product dart is (i,j) row-major; the reverse
// dart carries (j',i').
RotationGraph zigzag(const RotationGraph& g1, const RotationGraph& g2);

// Clouds carry a copy of g2 on ports 0..d2-1; port d2 is the long edge picked
// by the cloud index. Result: g1.num_vertices()*g1.degree() vertices, degree
// g2.degree()+1.
RotationGraph replacement(const RotationGraph& g1, const RotationGraph& g2);

// Two-sided product of biregular graphs. g1 is (c1,d1)-biregular on (N,M);
// g2 must be (c2,d2)-biregular on (d1,c1). Left product vertices are
// (left g1 vertex, left g2 vertex), right product vertices are
// (right g1 vertex, right g2 vertex); degrees (c2^2, d2^2).
BipartiteGraph zigzag_bipartite(const BipartiteGraph& g1, const BipartiteGraph& g2);

// Same first three steps, then a fourth step back across g2, so right product
// vertices live on g2's left side: sizes (N*d1, M*d1), degrees
// (c2^2*d2, c2*d2^2).
BipartiteGraph zigzag_modified(const BipartiteGraph& g1, const BipartiteGraph& g2);

// lambda1 + lambda2 + lambda2^2, inputs in [0,1].
double zigzag_bound(double lambda1, double lambda2);

enum class FVariant { sum, sqrt_form };

// (p + (1-p) f(lambda1, lambda2))^(1/3) with p = d2^2/(d2+1)^3. The sum
// variant reuses the three-term bound for f; the sqrt variant is
// f = (1-l2^2) l1 / 2 + sqrt((1-l2^2)^2 l1^2 + 4 l2^2) / 2.
double replacement_bound(double lambda1, double lambda2, std::uint32_t d2,
                         FVariant v = FVariant::sqrt_form);

struct ProductCertificate {
  ProductKind product_kind = ProductKind::zigzag;
  double lambda1 = 0.0;        // component spectral value (second largest |.|)
  double lambda2_small = 0.0;  // cloud spectral value
  double measured_lambda = 0.0;
  double bound = 0.0;
  bool bound_ok = false;  // measured <= bound + 1e-6
  std::uint64_t girth = 0;  // 0 when acyclic
  bool girth_bound_ok = false;
  // Populated for the replacement product only; true elsewhere.
  std::uint64_t diameter = 0;  // 0 when disconnected
  bool diameter_lower_ok = true;
  bool diameter_upper_sum_ok = true;      // t <= t1 + t2
  bool diameter_upper_product_ok = true;  // t <= t1 * t2 (alternative form)

  std::string to_json() const;
};

// Measures the product against its components: spectral bound, girth rule
// (four-cycle girth for zig-zag variants when the cloud is connected with
// more than two vertices, sandwich bounds for replacement). Failed checks are
// recorded in the certificate, never thrown.
ProductCertificate verify_product(const RotationGraph& product, const RotationGraph& g1,
                                  const RotationGraph& g2, ProductKind kind,
                                  std::uint64_t seed = 1);
ProductCertificate verify_product(const BipartiteGraph& product, const BipartiteGraph& g1,
                                  const BipartiteGraph& g2, ProductKind kind,
                                  std::uint64_t seed = 1);

}  // namespace expander

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "expander/edge_list.hpp"
#include "expander/products.hpp"
#include "expander/rotation_graph.hpp"

namespace expander {

enum class CayleyFamily { shift, mobius };

const char* cayley_family_name(CayleyFamily f);

// Element of the semidirect product A x| B. The A component is a coordinate
// bitmask (bit i = coordinate i); the B component is a rotation amount for
// the shift family and an index into the enumerated matrix table for the
// mobius family.
struct SemidirectElement {
  std::uint64_t a = 0;
  std::uint32_t b = 0;

  friend bool operator==(const SemidirectElement&, const SemidirectElement&) = default;
};

// A x| B with B acting on the coordinates of A by permutation.
//   shift:  A = bit vectors of length p, B = integers mod p acting by
//           cyclic shift, phi_b(x)_i = x_{(i+b) mod p}.
//   mobius: A = bit vectors indexed by the projective line over F_p
//           (coordinates 0..p-1 are field elements, coordinate p is the
//           point at infinity), B = 2x2 determinant-one matrices mod p
//           acting by fractional linear maps on the index set.
// Multiplication is (a,b)(c,d) = (a + phi_b(c), b d); the bit-vector part
// has characteristic 2, so + is xor.
class SemidirectGroup {
 public:
  static SemidirectGroup shift(std::uint32_t p);
  // Enumerates the matrix group; capped at p <= 7 (the table is quadratic
  // in the group order).
  static SemidirectGroup mobius(std::uint32_t p);

  CayleyFamily family() const { return family_; }
  std::uint32_t p() const { return p_; }
  // Number of coordinates of A: p for shift, p+1 for mobius.
  std::uint32_t dim() const { return dim_; }
  std::uint64_t a_size() const { return std::uint64_t(1) << dim_; }
  std::uint64_t b_size() const { return b_size_; }
  std::uint64_t size() const { return a_size() * b_size_; }

  SemidirectElement identity() const { return {0, b_identity_}; }
  // phi_b applied to a bitmask.
  std::uint64_t act(std::uint32_t b, std::uint64_t a) const;
  std::uint32_t b_mul(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t b_inverse(std::uint32_t x) const;
  SemidirectElement mul(const SemidirectElement& x, const SemidirectElement& y) const;
  SemidirectElement inverse(const SemidirectElement& x) const;

  // Flat vertex numbering a * b_size() + b.
  std::uint64_t index(const SemidirectElement& x) const { return x.a * b_size_ + x.b; }
  SemidirectElement element(std::uint64_t idx) const {
    return {idx / b_size_, std::uint32_t(idx % b_size_)};
  }

  // mobius only: matrix entries (row major) of B element t and the reverse
  // lookup. Throws for the shift family.
  std::array<std::uint32_t, 4> matrix(std::uint32_t t) const;
  std::uint32_t matrix_index(const std::array<std::uint32_t, 4>& m) const;

 private:
  SemidirectGroup() = default;

  CayleyFamily family_ = CayleyFamily::shift;
  std::uint32_t p_ = 0;
  std::uint32_t dim_ = 0;
  std::uint64_t b_size_ = 0;
  std::uint32_t b_identity_ = 0;
  // mobius tables: matrices, inverse index, and the coordinate image
  // perm_[t][i] of the fractional linear map of matrix t.
  std::vector<std::array<std::uint32_t, 4>> mats_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::vector<std::uint32_t>> perm_;
  std::unordered_map<std::uint32_t, std::uint32_t> mat_index_;
};

// Orbit of a bitmask under the full B action, sorted ascending.
std::vector<std::uint64_t> orbit(std::uint64_t a, const SemidirectGroup& grp);
std::vector<std::uint64_t> orbit(std::uint64_t a, CayleyFamily family, std::uint32_t p);

struct CayleySpec {
  CayleyFamily family = CayleyFamily::shift;
  std::uint32_t p = 5;
  // Coordinate masks a_1..a_k. Empty means: draw k distinct nonzero masks
  // from the seeded generator.
  std::vector<std::uint64_t> reps;
  std::uint32_t k = 0;
  // zigzag or replacement; the bipartite product kinds have no Cayley form.
  ProductKind product_kind = ProductKind::zigzag;
  std::uint64_t seed = 1;
};

// Ordered generating set. inv_index[j] is the position of elems[j]^{-1} in
// elems, or npos when the inverse is absent (then symmetric is false).
struct GeneratingSet {
  static constexpr std::uint32_t npos = 0xffffffffu;

  std::vector<SemidirectElement> elems;
  std::vector<std::uint32_t> inv_index;
  bool symmetric = false;
  // True when closing under inverses added elements beyond the raw set.
  bool symmetrized = false;
};

// S = { (0,beta) (a_i, 1) (0,beta') : beta, beta' in S_B }, deduplicated.
// S_B = {+1,-1} for shift, the two unit triangular matrices for mobius.
// Collapsing the multiset to a set may leave fewer than 4k elements.
GeneratingSet zigzag_generating_set(const SemidirectGroup& grp,
                                    const std::vector<std::uint64_t>& reps);
// S = { (0,beta) : beta in S_B } u { (a_i, 1) }, size k + 2.
GeneratingSet replacement_generating_set(const SemidirectGroup& grp,
                                         const std::vector<std::uint64_t>& reps);

// Undirected Cayley graph on the group's flat vertex numbering; port j at g
// leads to g * elems[j] and pairs with port inv_index[j]. Requires a
// symmetric identity-free generating set.
RotationGraph cayley_graph(const SemidirectGroup& grp, const GeneratingSet& gens);
// Directed edge list g -> g * elems[j], emitted vertex-major. Feed to
// double_cover for the bipartite form used by the mobius family.
EdgeList cayley_digraph(const SemidirectGroup& grp, const GeneratingSet& gens);

struct CayleyBuild {
  CayleySpec spec;  // reps resolved
  GeneratingSet gens;
  std::uint64_t group_size = 0;
  std::uint32_t degree = 0;
  // shift family: multiplicative order of 2 mod p equals p-1 (recorded, not
  // enforced; the expansion theorem for random reps wants it).
  bool two_generates = false;
  std::optional<RotationGraph> graph;    // shift family (symmetric set)
  std::optional<BipartiteGraph> cover;   // mobius family (double cover)
};

CayleyBuild build_cayley(const CayleySpec& spec);

// Frozen rep masks for reproducible builds. For the shift-family zigzag set
// the masks are chosen in distinct cyclic-shift orbits (skipping all-ones),
// which makes the generating set hit its 4k ceiling; everywhere else the
// first k nonzero masks suffice.
std::vector<std::uint64_t> fixture_reps(CayleyFamily family, std::uint32_t p, std::uint32_t k,
                                        ProductKind product_kind);

}  // namespace expander

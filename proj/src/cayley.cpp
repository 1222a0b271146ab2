#include "expander/cayley.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "expander/error.hpp"
#include "expander/rng.hpp"

namespace expander {

namespace {

// Dart ceiling for materialized Cayley graphs; the documented builds stay
// well under it.
constexpr std::uint64_t kDartBudget = std::uint64_t(1) << 26;

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

std::uint32_t mod_pow(std::uint64_t base, std::uint32_t exp, std::uint32_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  for (; exp; exp >>= 1) {
    if (exp & 1) r = r * base % mod;
    base = base * base % mod;
  }
  return std::uint32_t(r);
}

// Fermat inverse; callers guarantee p prime and x nonzero mod p.
std::uint32_t mod_inv(std::uint32_t x, std::uint32_t p) { return mod_pow(x, p - 2, p); }

std::uint32_t mat_key(const std::array<std::uint32_t, 4>& m, std::uint32_t p) {
  return ((m[0] * p + m[1]) * p + m[2]) * p + m[3];
}

// Image of projective point x (index p = infinity) under the fractional
// linear map of matrix m.
std::uint32_t mobius_image(const std::array<std::uint32_t, 4>& m, std::uint32_t x,
                           std::uint32_t p) {
  const std::uint32_t a = m[0], b = m[1], c = m[2], d = m[3];
  if (x == p) return c == 0 ? p : std::uint32_t(std::uint64_t(a) * mod_inv(c, p) % p);
  const std::uint32_t den = std::uint32_t((std::uint64_t(c) * x + d) % p);
  if (den == 0) return p;
  const std::uint32_t num = std::uint32_t((std::uint64_t(a) * x + b) % p);
  return std::uint32_t(std::uint64_t(num) * mod_inv(den, p) % p);
}

}  // namespace

const char* cayley_family_name(CayleyFamily f) {
  return f == CayleyFamily::shift ? "shift" : "mobius";
}

SemidirectGroup SemidirectGroup::shift(std::uint32_t p) {
  if (!is_prime(p) || p < 3) throw Error(Errc::bad_input, "p must be an odd prime");
  if (p > 29) throw Error(Errc::too_large, "shift family is capped at p <= 29");
  SemidirectGroup g;
  g.family_ = CayleyFamily::shift;
  g.p_ = p;
  g.dim_ = p;
  g.b_size_ = p;
  g.b_identity_ = 0;
  return g;
}

SemidirectGroup SemidirectGroup::mobius(std::uint32_t p) {
  if (!is_prime(p) || p < 3) throw Error(Errc::bad_input, "p must be an odd prime");
  if (p > 7) throw Error(Errc::too_large, "matrix tables are enumerated only for p <= 7");
  SemidirectGroup g;
  g.family_ = CayleyFamily::mobius;
  g.p_ = p;
  g.dim_ = p + 1;
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      for (std::uint32_t c = 0; c < p; ++c)
        for (std::uint32_t d = 0; d < p; ++d) {
          if ((std::uint64_t(a) * d + std::uint64_t(p) * p - std::uint64_t(b) * c) % p != 1)
            continue;
          const std::uint32_t t = std::uint32_t(g.mats_.size());
          g.mats_.push_back({a, b, c, d});
          g.mat_index_.emplace(mat_key({a, b, c, d}, p), t);
        }
  g.b_size_ = g.mats_.size();
  g.b_identity_ = g.mat_index_.at(mat_key({1, 0, 0, 1}, p));
  g.inv_.resize(g.b_size_);
  g.perm_.resize(g.b_size_);
  for (std::uint32_t t = 0; t < g.b_size_; ++t) {
    const auto& m = g.mats_[t];
    const std::array<std::uint32_t, 4> mi = {m[3], (p - m[1]) % p, (p - m[2]) % p, m[0]};
    g.inv_[t] = g.mat_index_.at(mat_key(mi, p));
    g.perm_[t].resize(p + 1);
    for (std::uint32_t x = 0; x <= p; ++x) g.perm_[t][x] = mobius_image(m, x, p);
  }
  return g;
}

std::uint64_t SemidirectGroup::act(std::uint32_t b, std::uint64_t a) const {
  std::uint64_t out = 0;
  if (family_ == CayleyFamily::shift) {
    // phi_b(x)_i = x_{(i+b) mod p}
    for (std::uint32_t i = 0; i < p_; ++i)
      if ((a >> ((i + b) % p_)) & 1) out |= std::uint64_t(1) << i;
  } else {
    // Coordinate i carries its bit to the image of i; scattering by the map
    // of b makes phi a homomorphism (the inverse map gathers).
    const auto& perm = perm_[b];
    for (std::uint32_t i = 0; i < dim_; ++i)
      if ((a >> i) & 1) out |= std::uint64_t(1) << perm[i];
  }
  return out;
}

std::uint32_t SemidirectGroup::b_mul(std::uint32_t x, std::uint32_t y) const {
  if (family_ == CayleyFamily::shift) return (x + y) % p_;
  const auto& m = mats_[x];
  const auto& n = mats_[y];
  const std::array<std::uint32_t, 4> r = {
      std::uint32_t((std::uint64_t(m[0]) * n[0] + std::uint64_t(m[1]) * n[2]) % p_),
      std::uint32_t((std::uint64_t(m[0]) * n[1] + std::uint64_t(m[1]) * n[3]) % p_),
      std::uint32_t((std::uint64_t(m[2]) * n[0] + std::uint64_t(m[3]) * n[2]) % p_),
      std::uint32_t((std::uint64_t(m[2]) * n[1] + std::uint64_t(m[3]) * n[3]) % p_)};
  return mat_index_.at(mat_key(r, p_));
}

std::uint32_t SemidirectGroup::b_inverse(std::uint32_t x) const {
  if (family_ == CayleyFamily::shift) return (p_ - x) % p_;
  return inv_[x];
}

SemidirectElement SemidirectGroup::mul(const SemidirectElement& x,
                                       const SemidirectElement& y) const {
  return {x.a ^ act(x.b, y.a), b_mul(x.b, y.b)};
}

SemidirectElement SemidirectGroup::inverse(const SemidirectElement& x) const {
  const std::uint32_t bi = b_inverse(x.b);
  return {act(bi, x.a), bi};
}

std::array<std::uint32_t, 4> SemidirectGroup::matrix(std::uint32_t t) const {
  if (family_ != CayleyFamily::mobius)
    throw Error(Errc::bad_input, "matrix entries exist only for the mobius family");
  return mats_.at(t);
}

std::uint32_t SemidirectGroup::matrix_index(const std::array<std::uint32_t, 4>& m) const {
  if (family_ != CayleyFamily::mobius)
    throw Error(Errc::bad_input, "matrix entries exist only for the mobius family");
  const auto it = mat_index_.find(mat_key(m, p_));
  if (it == mat_index_.end()) throw Error(Errc::invalid_element, "matrix has determinant != 1");
  return it->second;
}

std::vector<std::uint64_t> orbit(std::uint64_t a, const SemidirectGroup& grp) {
  if (a >= grp.a_size()) throw Error(Errc::invalid_element, "mask exceeds the coordinate space");
  std::set<std::uint64_t> out;
  for (std::uint32_t b = 0; b < grp.b_size(); ++b) out.insert(grp.act(b, a));
  return {out.begin(), out.end()};
}

std::vector<std::uint64_t> orbit(std::uint64_t a, CayleyFamily family, std::uint32_t p) {
  const auto grp =
      family == CayleyFamily::shift ? SemidirectGroup::shift(p) : SemidirectGroup::mobius(p);
  return orbit(a, grp);
}

namespace {

void validate_reps(const SemidirectGroup& grp, const std::vector<std::uint64_t>& reps) {
  std::set<std::uint64_t> seen;
  for (const std::uint64_t r : reps) {
    if (r == 0 || r >= grp.a_size())
      throw Error(Errc::invalid_element, "rep masks must be nonzero and within the space");
    if (!seen.insert(r).second) throw Error(Errc::invalid_element, "rep masks must be distinct");
  }
}

// The two generators of the acting group: +1/-1 rotations, or the unit
// triangular matrix pair.
std::array<std::uint32_t, 2> b_generators(const SemidirectGroup& grp) {
  if (grp.family() == CayleyFamily::shift) return {1, grp.p() - 1};
  return {grp.matrix_index({1, 1, 0, 1}), grp.matrix_index({1, 0, 1, 1})};
}

void push_unique(std::vector<SemidirectElement>& elems, const SemidirectElement& s) {
  if (std::find(elems.begin(), elems.end(), s) == elems.end()) elems.push_back(s);
}

// Fills inv_index and the symmetry flag from the element list.
void close_pairing(const SemidirectGroup& grp, GeneratingSet& gens) {
  gens.inv_index.assign(gens.elems.size(), GeneratingSet::npos);
  gens.symmetric = true;
  for (std::size_t j = 0; j < gens.elems.size(); ++j) {
    const auto inv = grp.inverse(gens.elems[j]);
    const auto it = std::find(gens.elems.begin(), gens.elems.end(), inv);
    if (it == gens.elems.end())
      gens.symmetric = false;
    else
      gens.inv_index[j] = std::uint32_t(it - gens.elems.begin());
  }
}

void symmetrize(const SemidirectGroup& grp, GeneratingSet& gens) {
  const std::size_t before = gens.elems.size();
  for (std::size_t j = 0; j < gens.elems.size(); ++j)
    push_unique(gens.elems, grp.inverse(gens.elems[j]));
  gens.symmetrized = gens.elems.size() != before;
  close_pairing(grp, gens);
}

}  // namespace

GeneratingSet zigzag_generating_set(const SemidirectGroup& grp,
                                    const std::vector<std::uint64_t>& reps) {
  validate_reps(grp, reps);
  if (reps.empty()) throw Error(Errc::bad_input, "need at least one rep");
  const auto bg = b_generators(grp);
  GeneratingSet gens;
  for (const std::uint64_t r : reps)
    for (const std::uint32_t beta : bg)
      for (const std::uint32_t betap : bg) {
        const SemidirectElement s = grp.mul(
            grp.mul({0, beta}, {r, grp.identity().b}), {0, betap});
        push_unique(gens.elems, s);
      }
  close_pairing(grp, gens);
  if (!gens.symmetric && grp.family() == CayleyFamily::shift) symmetrize(grp, gens);
  return gens;
}

GeneratingSet replacement_generating_set(const SemidirectGroup& grp,
                                         const std::vector<std::uint64_t>& reps) {
  validate_reps(grp, reps);
  if (reps.empty()) throw Error(Errc::bad_input, "need at least one rep");
  const auto bg = b_generators(grp);
  GeneratingSet gens;
  push_unique(gens.elems, {0, bg[0]});
  push_unique(gens.elems, {0, bg[1]});
  for (const std::uint64_t r : reps) push_unique(gens.elems, {r, grp.identity().b});
  close_pairing(grp, gens);
  if (!gens.symmetric && grp.family() == CayleyFamily::shift) symmetrize(grp, gens);
  return gens;
}

RotationGraph cayley_graph(const SemidirectGroup& grp, const GeneratingSet& gens) {
  if (!gens.symmetric)
    throw Error(Errc::non_symmetric, "generating set is not closed under inverses");
  const std::uint64_t n = grp.size();
  const std::uint32_t d = std::uint32_t(gens.elems.size());
  if (d == 0) throw Error(Errc::bad_input, "empty generating set");
  for (const auto& s : gens.elems)
    if (s == grp.identity())
      throw Error(Errc::invalid_element, "identity generator would make a half-loop");
  if (n * d > kDartBudget) throw Error(Errc::too_large, "dart count exceeds the budget");
  std::vector<std::uint64_t> rot(n * d);
  for (std::uint64_t v = 0; v < n; ++v) {
    const SemidirectElement g = grp.element(v);
    for (std::uint32_t j = 0; j < d; ++j)
      rot[v * d + j] = grp.index(grp.mul(g, gens.elems[j])) * d + gens.inv_index[j];
  }
  return RotationGraph(n, d, std::move(rot));
}

EdgeList cayley_digraph(const SemidirectGroup& grp, const GeneratingSet& gens) {
  const std::uint64_t n = grp.size();
  const std::uint32_t d = std::uint32_t(gens.elems.size());
  if (d == 0) throw Error(Errc::bad_input, "empty generating set");
  for (const auto& s : gens.elems)
    if (s == grp.identity())
      throw Error(Errc::invalid_element, "identity generator would make a loop");
  if (n * d > kDartBudget) throw Error(Errc::too_large, "edge count exceeds the budget");
  EdgeList el;
  el.kind = EdgeListKind::directed;
  el.n = n;
  el.m = n * d;
  el.edges.reserve(n * d);
  for (std::uint64_t v = 0; v < n; ++v) {
    const SemidirectElement g = grp.element(v);
    for (std::uint32_t j = 0; j < d; ++j)
      el.edges.emplace_back(v, grp.index(grp.mul(g, gens.elems[j])));
  }
  return el;
}

CayleyBuild build_cayley(const CayleySpec& spec) {
  if (spec.product_kind != ProductKind::zigzag && spec.product_kind != ProductKind::replacement)
    throw Error(Errc::bad_input, "cayley builds exist for the zigzag and replacement sets only");
  const SemidirectGroup grp = spec.family == CayleyFamily::shift
                                  ? SemidirectGroup::shift(spec.p)
                                  : SemidirectGroup::mobius(spec.p);
  CayleyBuild out;
  out.spec = spec;
  if (out.spec.reps.empty()) {
    if (spec.k == 0) throw Error(Errc::bad_input, "need k >= 1 or explicit reps");
    if (spec.k > grp.a_size() - 1)
      throw Error(Errc::bad_input, "more reps requested than nonzero masks exist");
    Rng rng(Rng::derive(spec.seed, 0xca71e7));
    std::set<std::uint64_t> drawn;
    while (drawn.size() < spec.k) drawn.insert(rng.below(grp.a_size() - 1) + 1);
    out.spec.reps.assign(drawn.begin(), drawn.end());
  }
  out.spec.k = std::uint32_t(out.spec.reps.size());
  {
    // order of 2 in the multiplicative group mod p
    std::uint32_t ord = 1;
    std::uint64_t x = 2 % spec.p;
    while (x != 1) {
      x = x * 2 % spec.p;
      ++ord;
    }
    out.two_generates = ord == spec.p - 1;
  }
  out.gens = spec.product_kind == ProductKind::zigzag
                 ? zigzag_generating_set(grp, out.spec.reps)
                 : replacement_generating_set(grp, out.spec.reps);
  out.group_size = grp.size();
  out.degree = std::uint32_t(out.gens.elems.size());
  if (spec.family == CayleyFamily::shift) {
    out.graph = cayley_graph(grp, out.gens);
  } else {
    out.cover = double_cover(cayley_digraph(grp, out.gens), Rng::derive(spec.seed, 0xd0c0));
  }
  return out;
}

std::vector<std::uint64_t> fixture_reps(CayleyFamily family, std::uint32_t p, std::uint32_t k,
                                        ProductKind product_kind) {
  const std::uint32_t dim = family == CayleyFamily::shift ? p : p + 1;
  if (dim >= 63) throw Error(Errc::too_large, "coordinate space too wide");
  const std::uint64_t nonzero = (std::uint64_t(1) << dim) - 1;
  if (k == 0 || k > nonzero) throw Error(Errc::bad_input, "k out of range");
  std::vector<std::uint64_t> reps;
  if (family == CayleyFamily::shift && product_kind == ProductKind::zigzag) {
    // One mask per cyclic-shift orbit keeps the 4k products distinct; the
    // all-ones mask is fixed by every shift and is skipped.
    const auto grp = SemidirectGroup::shift(p);
    std::set<std::uint64_t> used;
    for (std::uint64_t a = 1; a < nonzero && reps.size() < k; ++a) {
      if (used.count(a)) continue;
      reps.push_back(a);
      for (std::uint32_t b = 0; b < p; ++b) used.insert(grp.act(b, a));
    }
    if (reps.size() < k) throw Error(Errc::bad_input, "not enough distinct shift orbits");
  } else {
    for (std::uint64_t a = 1; std::uint64_t(reps.size()) < k; ++a) reps.push_back(a);
  }
  return reps;
}

}  // namespace expander

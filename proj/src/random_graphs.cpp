#include "expander/random_graphs.hpp"

#include <unordered_set>
#include <vector>

#include "expander/error.hpp"
#include "expander/rng.hpp"

namespace expander {

namespace {

constexpr int kRestarts = 2000;

std::uint64_t pair_key(std::uint64_t a, std::uint64_t b) {
  return a < b ? (a << 32) + b : (b << 32) + a;
}

}  // namespace

// Edge-by-edge matching with restarts: pick two free darts at distinct,
// non-adjacent vertices; restart the attempt when the remaining darts admit
// no such pair within the retry allowance. Handles degrees a whole-pairing
// rejection cannot reach.
RotationGraph random_regular(std::uint64_t n, std::uint32_t d, std::uint64_t seed) {
  if (n < 2 || d == 0 || d >= n) throw Error(Errc::bad_input, "need 1 <= d < n and n >= 2");
  if ((n * d) % 2 != 0) throw Error(Errc::bad_input, "n*d must be even");
  if (n >= (std::uint64_t(1) << 32)) throw Error(Errc::too_large, "vertex count exceeds 2^32");
  std::vector<std::uint64_t> rot(n * d), free_darts;
  std::unordered_set<std::uint64_t> seen;
  for (int attempt = 0; attempt < kRestarts; ++attempt) {
    Rng rng(Rng::derive(seed, 0x5e67, std::uint64_t(attempt)));
    free_darts.resize(n * d);
    for (std::uint64_t t = 0; t < n * d; ++t) free_darts[t] = t;
    seen.clear();
    bool stuck = false;
    while (!free_darts.empty() && !stuck) {
      const std::uint64_t budget = 64 + 2 * free_darts.size() * free_darts.size();
      std::uint64_t tries = 0;
      for (;; ++tries) {
        if (tries >= budget) {
          stuck = true;
          break;
        }
        const std::uint64_t ai = rng.below(free_darts.size());
        std::uint64_t bi = rng.below(free_darts.size() - 1);
        if (bi >= ai) ++bi;
        const std::uint64_t a = free_darts[ai], b = free_darts[bi];
        const std::uint64_t u = a / d, v = b / d;
        if (u == v || seen.count(pair_key(u, v))) continue;
        seen.insert(pair_key(u, v));
        rot[a] = b;
        rot[b] = a;
        if (ai > bi) {
          free_darts[ai] = free_darts.back();
          free_darts.pop_back();
          free_darts[bi] = free_darts.back();
          free_darts.pop_back();
        } else {
          free_darts[bi] = free_darts.back();
          free_darts.pop_back();
          free_darts[ai] = free_darts.back();
          free_darts.pop_back();
        }
        break;
      }
    }
    if (stuck) continue;
    RotationGraph g(n, d, rot);
    if (g.is_connected()) return g;
  }
  throw Error(Errc::no_convergence, "could not sample a simple connected regular graph");
}

BipartiteGraph random_biregular(std::uint64_t nl, std::uint64_t nr, std::uint32_t c,
                                std::uint32_t d, std::uint64_t seed) {
  if (nl == 0 || nr == 0 || c == 0 || d == 0) throw Error(Errc::bad_input, "empty side");
  if (nl * c != nr * d) throw Error(Errc::side_mismatch, "nl*c must equal nr*d");
  if (c > nr || d > nl)
    throw Error(Errc::bad_input, "degree exceeds opposite side, cannot be simple");
  if (nl >= (std::uint64_t(1) << 32) || nr >= (std::uint64_t(1) << 32))
    throw Error(Errc::too_large, "vertex count exceeds 2^32");
  const std::uint64_t e = nl * c;
  std::vector<std::uint64_t> rot(e), left_free, right_free;
  std::unordered_set<std::uint64_t> seen;
  for (int attempt = 0; attempt < kRestarts; ++attempt) {
    Rng rng(Rng::derive(seed, 0xb19e, std::uint64_t(attempt)));
    left_free.resize(e);
    right_free.resize(e);
    for (std::uint64_t t = 0; t < e; ++t) left_free[t] = right_free[t] = t;
    seen.clear();
    bool stuck = false;
    while (!left_free.empty() && !stuck) {
      const std::uint64_t budget = 64 + 2 * left_free.size() * right_free.size();
      std::uint64_t tries = 0;
      for (;; ++tries) {
        if (tries >= budget) {
          stuck = true;
          break;
        }
        const std::uint64_t ai = rng.below(left_free.size());
        const std::uint64_t bi = rng.below(right_free.size());
        const std::uint64_t a = left_free[ai], b = right_free[bi];
        const std::uint64_t v = a / c, w = b / d;
        // Sides are disjoint vertex spaces, so the key stays ordered as (left, right).
        if (seen.count((v << 32) + w)) continue;
        seen.insert((v << 32) + w);
        rot[a] = b;
        left_free[ai] = left_free.back();
        left_free.pop_back();
        right_free[bi] = right_free.back();
        right_free.pop_back();
        break;
      }
    }
    if (stuck) continue;
    BipartiteGraph g(nl, nr, c, d, rot);
    if (g.is_connected()) return g;
  }
  throw Error(Errc::no_convergence, "could not sample a simple connected biregular graph");
}

}  // namespace expander

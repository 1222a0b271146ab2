#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace expander {

// Stateless 64-bit mixer; used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic RNG with portable derived draws. mt19937_64 output is fixed
// by the standard; the distributions below are hand-rolled because the
// <random> distribution objects are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Independent stream for (seed, a, b); used for per-frame noise so results
  // do not depend on worker count or scheduling.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return mix64(mix64(mix64(seed) ^ a) ^ b);
  }

  std::uint64_t next_u64() { return eng_(); }

  // Unbiased integer in [0, n). Rejection sampling on the top bits.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t rem = std::uint64_t(-n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = eng_();
      if (x >= rem) return x % n;
    }
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return double(eng_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; second value of each pair is cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v;
    do {
      u = unit();
    } while (u == 0.0);
    v = unit();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 6.283185307179586476925286766559 * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = std::size_t(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace expander

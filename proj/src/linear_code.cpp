#include "expander/linear_code.hpp"

#include <cstdio>

#include "expander/error.hpp"

namespace expander {

std::vector<std::uint32_t> LinearCode::column_syndromes() const {
  if (checks() > 32) throw Error(Errc::too_large, "syndrome masks need n-k <= 32");
  std::vector<std::uint32_t> out(n, 0);
  for (std::uint32_t c = 0; c < n; ++c)
    for (std::uint32_t r = 0; r < checks(); ++r)
      if (H.get(r, c)) out[c] |= std::uint32_t(1) << r;
  return out;
}

LinearCode make_linear_code(std::uint32_t n, std::uint32_t k, Gf2Matrix H,
                            std::optional<std::uint32_t> d_min, std::string name) {
  if (n == 0 || k == 0 || k >= n) throw Error(Errc::bad_input, "need 0 < k < n");
  if (H.rows() != n - k || H.cols() != n)
    throw Error(Errc::bad_input, "parity-check matrix must be (n-k) x n");
  if (gf2_rank(H) != n - k)
    throw Error(Errc::rank_deficient, "parity-check matrix is not full row rank");
  LinearCode code{n, k, d_min, std::move(H), std::move(name)};
  if (code.name.empty())
    code.name = std::to_string(n) + "-" + std::to_string(k);
  if (n <= 25) {
    const std::uint32_t measured = code_min_distance(code);
    if (d_min && *d_min != measured)
      throw Error(Errc::bad_input, "declared distance " + std::to_string(*d_min) +
                                       " but exhaustive search finds " +
                                       std::to_string(measured));
    code.d_min = measured;
  }
  return code;
}

std::uint32_t code_min_distance(const LinearCode& code) {
  return gf2_min_weight(gf2_nullspace(code.H));
}

LinearCode repeated_hamming_code(std::uint32_t r, std::uint32_t n) {
  if (r == 0 || r >= n) throw Error(Errc::bad_input, "need 0 < r < n");
  if (r >= 31) throw Error(Errc::too_large, "check count capped below 31");
  const std::uint32_t period = (std::uint32_t(1) << r) - 1;
  // powers of two up to 2^{r-1} must appear among the columns for full rank
  if (r > 1 && n < (std::uint32_t(1) << (r - 1)))
    throw Error(Errc::rank_deficient, "too few columns for full rank");
  Gf2Matrix H(r, n);
  for (std::uint32_t c = 0; c < n; ++c) {
    const std::uint32_t pattern = (c % period) + 1;
    for (std::uint32_t row = 0; row < r; ++row)
      if ((pattern >> row) & 1) H.set(row, c, true);
  }
  return make_linear_code(n, n - r, std::move(H), std::nullopt,
                          std::to_string(n) + "-" + std::to_string(n - r));
}

LinearCode single_parity_check(std::uint32_t n) { return repeated_hamming_code(1, n); }

LinearCode subcode_library(const std::string& key) {
  unsigned n = 0, k = 0;
  char tail = 0;
  if (std::sscanf(key.c_str(), "%u-%u%c", &n, &k, &tail) != 2 || n == 0 || k == 0 || k >= n)
    throw Error(Errc::unknown_code, "expected a key of the form n-k, got '" + key + "'");
  return repeated_hamming_code(n - k, n);
}

std::vector<std::vector<std::uint8_t>> codewords(const LinearCode& code) {
  if (code.k > 20) throw Error(Errc::too_large, "codeword enumeration capped at 2^20");
  const Gf2Matrix gen = gf2_nullspace(code.H);
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(std::size_t(1) << code.k);
  for (std::uint64_t m = 0; m < (std::uint64_t(1) << code.k); ++m) {
    std::vector<std::uint8_t> w(code.n, 0);
    for (std::uint32_t r = 0; r < gen.rows(); ++r)
      if ((m >> r) & 1)
        for (std::uint32_t c = 0; c < code.n; ++c) w[c] ^= std::uint8_t(gen.get(r, c));
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace expander

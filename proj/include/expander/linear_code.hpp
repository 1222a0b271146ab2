#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expander/gf2.hpp"

namespace expander {

// Binary [n, k] block code given by a full-row-rank parity-check matrix.
struct LinearCode {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::optional<std::uint32_t> d_min;
  Gf2Matrix H;  // (n-k) x n
  std::string name;

  std::uint32_t checks() const { return n - k; }
  // H column c as a packed syndrome mask (bit r = H[r][c]); needs n-k <= 32.
  std::vector<std::uint32_t> column_syndromes() const;
};

// Validates rank(H) = rows = n - k; verifies a declared minimum distance by
// exhaustive span search when n <= 25, and measures it when absent and the
// search is feasible.
LinearCode make_linear_code(std::uint32_t n, std::uint32_t k, Gf2Matrix H,
                            std::optional<std::uint32_t> d_min = std::nullopt,
                            std::string name = "");

// Exhaustive minimum distance via the codeword span; needs k <= 24.
std::uint32_t code_min_distance(const LinearCode& code);

// Parity-check family with r rows whose column c is the binary pattern of
// (c mod (2^r - 1)) + 1. Distinct nonzero columns give distance 3 (Hamming
// codes and their shortenings); wrapped-around repeats give distance 2; one
// all-ones row (r = 1) is a single parity check.
LinearCode repeated_hamming_code(std::uint32_t r, std::uint32_t n);

LinearCode single_parity_check(std::uint32_t n);

// Named library lookup, keys "n-k" (e.g. "15-11", "20-15"). Every key maps
// to repeated_hamming_code(n-k, n); unknown or infeasible keys throw.
LinearCode subcode_library(const std::string& key);

// All 2^k codewords as bit vectors, enumeration order fixed by the kernel
// basis; needs k <= 20.
std::vector<std::vector<std::uint8_t>> codewords(const LinearCode& code);

}  // namespace expander

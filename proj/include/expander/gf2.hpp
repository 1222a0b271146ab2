#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace expander {

// Dense bit matrix over GF(2), rows packed into 64-bit words.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::uint32_t rows, std::uint32_t cols);
  // One string per row, characters '0'/'1', equal lengths.
  static Gf2Matrix from_strings(const std::vector<std::string>& rows);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  std::uint32_t words_per_row() const { return wpr_; }

  bool get(std::uint32_t r, std::uint32_t c) const {
    return (bits_[std::size_t(r) * wpr_ + c / 64] >> (c % 64)) & 1;
  }
  void set(std::uint32_t r, std::uint32_t c, bool v) {
    const std::uint64_t m = std::uint64_t(1) << (c % 64);
    auto& w = bits_[std::size_t(r) * wpr_ + c / 64];
    w = v ? (w | m) : (w & ~m);
  }
  void flip(std::uint32_t r, std::uint32_t c) {
    bits_[std::size_t(r) * wpr_ + c / 64] ^= std::uint64_t(1) << (c % 64);
  }

  // row dst ^= row src
  void xor_rows(std::uint32_t dst, std::uint32_t src);
  void swap_rows(std::uint32_t a, std::uint32_t b);
  bool row_empty(std::uint32_t r) const;
  std::uint32_t row_weight(std::uint32_t r) const;
  std::uint64_t word(std::uint32_t r, std::uint32_t w) const {
    return bits_[std::size_t(r) * wpr_ + w];
  }

  std::string row_string(std::uint32_t r) const;

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  std::uint32_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Rank by row elimination on a copy.
std::uint32_t gf2_rank(Gf2Matrix m);

// Basis of { x : m x = 0 }, one kernel vector per row; (cols - rank) rows.
Gf2Matrix gf2_nullspace(const Gf2Matrix& m);

// Minimum weight over the nonzero row span, by Gray-code enumeration of the
// 2^rows - 1 combinations. Capped at 24 basis rows.
std::uint32_t gf2_min_weight(const Gf2Matrix& basis);

// m x == 0 for a bit-per-entry vector.
bool gf2_in_nullspace(const Gf2Matrix& m, const std::vector<std::uint8_t>& x);

}  // namespace expander

#include "expander/gf2.hpp"

#include <algorithm>
#include <bit>

#include "expander/error.hpp"

namespace expander {

Gf2Matrix::Gf2Matrix(std::uint32_t rows, std::uint32_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64) {
  bits_.assign(std::size_t(rows_) * wpr_, 0);
}

Gf2Matrix Gf2Matrix::from_strings(const std::vector<std::string>& rows) {
  if (rows.empty()) throw Error(Errc::bad_input, "no rows");
  Gf2Matrix m(std::uint32_t(rows.size()), std::uint32_t(rows[0].size()));
  for (std::uint32_t r = 0; r < m.rows(); ++r) {
    if (rows[r].size() != m.cols()) throw Error(Errc::bad_input, "ragged rows");
    for (std::uint32_t c = 0; c < m.cols(); ++c) {
      if (rows[r][c] != '0' && rows[r][c] != '1')
        throw Error(Errc::bad_input, "rows must be 0/1 strings");
      if (rows[r][c] == '1') m.set(r, c, true);
    }
  }
  return m;
}

void Gf2Matrix::xor_rows(std::uint32_t dst, std::uint32_t src) {
  for (std::uint32_t w = 0; w < wpr_; ++w)
    bits_[std::size_t(dst) * wpr_ + w] ^= bits_[std::size_t(src) * wpr_ + w];
}

void Gf2Matrix::swap_rows(std::uint32_t a, std::uint32_t b) {
  if (a == b) return;
  for (std::uint32_t w = 0; w < wpr_; ++w)
    std::swap(bits_[std::size_t(a) * wpr_ + w], bits_[std::size_t(b) * wpr_ + w]);
}

bool Gf2Matrix::row_empty(std::uint32_t r) const {
  for (std::uint32_t w = 0; w < wpr_; ++w)
    if (bits_[std::size_t(r) * wpr_ + w]) return false;
  return true;
}

std::uint32_t Gf2Matrix::row_weight(std::uint32_t r) const {
  std::uint32_t n = 0;
  for (std::uint32_t w = 0; w < wpr_; ++w)
    n += std::uint32_t(std::popcount(bits_[std::size_t(r) * wpr_ + w]));
  return n;
}

std::string Gf2Matrix::row_string(std::uint32_t r) const {
  std::string s(cols_, '0');
  for (std::uint32_t c = 0; c < cols_; ++c)
    if (get(r, c)) s[c] = '1';
  return s;
}

std::uint32_t gf2_rank(Gf2Matrix m) {
  std::uint32_t rank = 0;
  for (std::uint32_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::uint32_t pivot = rank;
    while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(rank, pivot);
    for (std::uint32_t r = 0; r < m.rows(); ++r)
      if (r != rank && m.get(r, c)) m.xor_rows(r, rank);
    ++rank;
  }
  return rank;
}

Gf2Matrix gf2_nullspace(const Gf2Matrix& in) {
  Gf2Matrix m = in;
  std::vector<std::uint32_t> pivot_col;
  std::uint32_t rank = 0;
  for (std::uint32_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::uint32_t pivot = rank;
    while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(rank, pivot);
    for (std::uint32_t r = 0; r < m.rows(); ++r)
      if (r != rank && m.get(r, c)) m.xor_rows(r, rank);
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<std::uint8_t> is_pivot(m.cols(), 0);
  for (const std::uint32_t c : pivot_col) is_pivot[c] = 1;
  Gf2Matrix ker(m.cols() - rank, m.cols());
  std::uint32_t kr = 0;
  for (std::uint32_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    ker.set(kr, free, true);
    for (std::uint32_t r = 0; r < rank; ++r)
      if (m.get(r, free)) ker.set(kr, pivot_col[r], true);
    ++kr;
  }
  return ker;
}

std::uint32_t gf2_min_weight(const Gf2Matrix& basis) {
  if (basis.rows() == 0) throw Error(Errc::bad_input, "span has no nonzero words");
  if (basis.rows() > 24) throw Error(Errc::too_large, "span enumeration is capped at 2^24");
  const std::uint32_t wpr = basis.words_per_row();
  std::vector<std::uint64_t> acc(wpr, 0);
  std::uint32_t best = basis.cols() + 1;
  const std::uint64_t total = std::uint64_t(1) << basis.rows();
  for (std::uint64_t i = 1; i < total; ++i) {
    const std::uint32_t r = std::uint32_t(std::countr_zero(i));  // Gray-code flip
    for (std::uint32_t w = 0; w < wpr; ++w) acc[w] ^= basis.word(r, w);
    std::uint32_t weight = 0;
    for (std::uint32_t w = 0; w < wpr; ++w) weight += std::uint32_t(std::popcount(acc[w]));
    best = std::min(best, weight);
  }
  return best;
}

bool gf2_in_nullspace(const Gf2Matrix& m, const std::vector<std::uint8_t>& x) {
  if (x.size() != m.cols()) throw Error(Errc::length_mismatch, "vector length != column count");
  for (std::uint32_t r = 0; r < m.rows(); ++r) {
    std::uint8_t s = 0;
    for (std::uint32_t c = 0; c < m.cols(); ++c) s ^= std::uint8_t(m.get(r, c) & (x[c] & 1));
    if (s) return false;
  }
  return true;
}

}  // namespace expander

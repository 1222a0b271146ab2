#include "expander/trellis.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>

#include "expander/error.hpp"

namespace expander {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLlrClip = 50.0;

double clip_llr(double x) { return std::clamp(x, -kLlrClip, kLlrClip); }

// log(e^a + e^b) without leaving the log domain.
double max_star(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace

WolfTrellis::WolfTrellis(const LinearCode& code) : n_(code.n), r_(code.checks()) {
  if (n_ > 32 || r_ > 16)
    throw Error(Errc::too_large, "trellis needs n <= 32 and n-k <= 16");
  const std::vector<std::uint32_t> cols = code.column_syndromes();

  // Backward spans: bases of the column suffixes keyed by top bit, so a
  // forward state survives only when some suffix completes it to zero.
  std::vector<std::array<std::uint32_t, 16>> basis(n_ + 1);
  basis[n_].fill(0);
  for (std::uint32_t t = n_; t-- > 0;) {
    basis[t] = basis[t + 1];
    std::uint32_t v = cols[t];
    while (v != 0) {
      const int hi = std::bit_width(v) - 1;
      if (basis[t][hi] == 0) {
        basis[t][hi] = v;
        break;
      }
      v ^= basis[t][hi];
    }
  }
  auto in_span = [&](std::uint32_t s, std::uint32_t t) {
    while (s != 0) {
      const int hi = std::bit_width(s) - 1;
      if (basis[t][hi] == 0) return false;
      s ^= basis[t][hi];
    }
    return true;
  };

  states_.assign(n_ + 1, {});
  trans_.assign(n_, {});
  states_[0] = {0};
  std::vector<std::uint32_t> index(std::size_t(1) << r_, 0);
  for (std::uint32_t t = 0; t < n_; ++t) {
    std::vector<std::uint32_t>& next = states_[t + 1];
    for (std::uint32_t from = 0; from < states_[t].size(); ++from) {
      for (std::uint8_t bit = 0; bit < 2; ++bit) {
        const std::uint32_t s = states_[t][from] ^ (bit ? cols[t] : 0u);
        if (!in_span(s, t + 1)) continue;
        auto it = std::find(next.begin(), next.end(), s);
        if (it == next.end()) {
          index[s] = std::uint32_t(next.size());
          next.push_back(s);
        }
        trans_[t].push_back({from, index[s], bit});
      }
    }
  }
  if (states_[n_] != std::vector<std::uint32_t>{0})
    throw Error(Errc::bad_input, "trellis did not terminate at the zero state");
}

std::uint32_t WolfTrellis::max_states() const {
  std::uint32_t m = 0;
  for (const auto& s : states_) m = std::max(m, std::uint32_t(s.size()));
  return m;
}

std::uint64_t WolfTrellis::count_paths() const {
  std::vector<std::uint64_t> cur = {1};
  for (std::uint32_t t = 0; t < n_; ++t) {
    std::vector<std::uint64_t> next(states_[t + 1].size(), 0);
    for (const Transition& e : trans_[t]) next[e.to] += cur[e.from];
    cur = std::move(next);
  }
  return cur[0];
}

WolfTrellis build_trellis(const LinearCode& code) { return WolfTrellis(code); }

std::vector<double> bcjr_extrinsic(const WolfTrellis& trellis,
                                   const std::vector<double>& llr_in) {
  const std::uint32_t n = trellis.n();
  if (llr_in.size() != n)
    throw Error(Errc::length_mismatch, "llr length != trellis length");

  std::vector<double> llr(n);
  for (std::uint32_t t = 0; t < n; ++t) llr[t] = clip_llr(llr_in[t]);

  // Branch metric +-llr/2 keeps the per-section normalization symmetric; any
  // common shift cancels in the final log-ratio.
  std::vector<std::vector<double>> alpha(n + 1), beta(n + 1);
  alpha[0] = {0.0};
  for (std::uint32_t t = 0; t < n; ++t) {
    alpha[t + 1].assign(trellis.num_states(t + 1), kNegInf);
    for (const auto& e : trellis.transitions(t)) {
      const double g = e.bit ? -0.5 * llr[t] : 0.5 * llr[t];
      alpha[t + 1][e.to] = max_star(alpha[t + 1][e.to], alpha[t][e.from] + g);
    }
  }
  beta[n] = {0.0};
  for (std::uint32_t t = n; t-- > 0;) {
    beta[t].assign(trellis.num_states(t), kNegInf);
    for (const auto& e : trellis.transitions(t)) {
      const double g = e.bit ? -0.5 * llr[t] : 0.5 * llr[t];
      beta[t][e.from] = max_star(beta[t][e.from], beta[t + 1][e.to] + g);
    }
  }

  std::vector<double> out(n);
  for (std::uint32_t t = 0; t < n; ++t) {
    double m0 = kNegInf, m1 = kNegInf;
    for (const auto& e : trellis.transitions(t)) {
      const double g = e.bit ? -0.5 * llr[t] : 0.5 * llr[t];
      const double m = alpha[t][e.from] + g + beta[t + 1][e.to];
      if (e.bit)
        m1 = max_star(m1, m);
      else
        m0 = max_star(m0, m);
    }
    // (m0 - m1) is the full posterior ratio and already contains llr[t].
    out[t] = clip_llr((m0 - m1) - llr[t]);
  }
  return out;
}

std::vector<double> map_extrinsic_exhaustive(const LinearCode& code,
                                             const std::vector<double>& llr_in) {
  if (llr_in.size() != code.n)
    throw Error(Errc::length_mismatch, "llr length != code length");
  std::vector<double> llr(code.n);
  for (std::uint32_t t = 0; t < code.n; ++t) llr[t] = clip_llr(llr_in[t]);

  const auto words = codewords(code);
  std::vector<double> p0(code.n, kNegInf), p1(code.n, kNegInf);
  for (const auto& w : words) {
    double score = 0;
    for (std::uint32_t t = 0; t < code.n; ++t)
      score += w[t] ? -0.5 * llr[t] : 0.5 * llr[t];
    for (std::uint32_t t = 0; t < code.n; ++t) {
      if (w[t])
        p1[t] = max_star(p1[t], score);
      else
        p0[t] = max_star(p0[t], score);
    }
  }
  std::vector<double> out(code.n);
  for (std::uint32_t t = 0; t < code.n; ++t)
    out[t] = clip_llr((p0[t] - p1[t]) - llr[t]);
  return out;
}

}  // namespace expander

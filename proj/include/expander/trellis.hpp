#pragma once

#include <cstdint>
#include <vector>

#include "expander/linear_code.hpp"

namespace expander {

// Syndrome trellis of a binary linear code. Section t holds the partial
// syndromes H[:,0:t] x[0:t] that are still completable to zero; paths from
// the all-zero start state to the all-zero end state are exactly the
// codewords. Needs n <= 32 and n - k <= 16.
class WolfTrellis {
 public:
  struct Transition {
    std::uint32_t from;  // state index in section t
    std::uint32_t to;    // state index in section t + 1
    std::uint8_t bit;
  };

  explicit WolfTrellis(const LinearCode& code);

  std::uint32_t n() const { return n_; }
  std::uint32_t checks() const { return r_; }
  // Sections are 0..n; interior growth is capped at 2^{n-k}.
  std::uint32_t num_states(std::uint32_t section) const {
    return std::uint32_t(states_[section].size());
  }
  std::uint32_t max_states() const;
  const std::vector<Transition>& transitions(std::uint32_t section) const {
    return trans_[section];
  }
  // Syndrome value of a state (diagnostic; tests recover codewords from it).
  std::uint32_t state_syndrome(std::uint32_t section, std::uint32_t idx) const {
    return states_[section][idx];
  }

  // Start-to-end path count; equals 2^k.
  std::uint64_t count_paths() const;

 private:
  std::uint32_t n_ = 0;
  std::uint32_t r_ = 0;
  std::vector<std::vector<std::uint32_t>> states_;  // per-section syndromes
  std::vector<std::vector<Transition>> trans_;      // section t -> t + 1
};

WolfTrellis build_trellis(const LinearCode& code);

// Per-bit extrinsic log-likelihood ratios (posterior minus intrinsic) by
// exact log-domain forward/backward recursion with the max-plus-correction
// rule. Inputs and outputs are clipped to +-50. llr convention:
// positive favors bit 0.
std::vector<double> bcjr_extrinsic(const WolfTrellis& trellis,
                                   const std::vector<double>& llr_in);

// Exhaustive per-bit MAP over all codewords; the independent reference for
// bcjr_extrinsic. Needs k <= 20.
std::vector<double> map_extrinsic_exhaustive(const LinearCode& code,
                                             const std::vector<double>& llr_in);

}  // namespace expander

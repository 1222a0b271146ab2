#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "expander/gldpc.hpp"
#include "expander/trellis.hpp"

namespace expander {

struct DecodeResult {
  std::vector<std::uint8_t> hard;  // n_bits decisions, ties to 0
  std::uint32_t iterations = 0;
  bool converged = false;  // every constraint satisfied by hard
};

// Sum-product over the assembly graph. Every bit sits on exactly one edge and
// so has exactly two constraint neighbors; the schedule is flooding, with one
// directed message per (constraint, port). Each round every constraint runs
// the BCJR extrinsic on channel + the message from the other endpoint.
// Reusable across frames: construction caches one trellis per subcode and the
// bit incidence table, decode() keeps all mutable state on its own stack.
class GldpcDecoder {
 public:
  explicit GldpcDecoder(const GldpcCode& code);

  DecodeResult decode(const std::vector<double>& channel_llrs,
                      std::uint32_t max_iterations = 50,
                      bool early_stop = true) const;

  const GldpcCode& code() const { return *code_; }

 private:
  struct Port {
    std::uint32_t check;
    std::uint32_t slot;
  };

  const GldpcCode* code_;
  std::vector<WolfTrellis> trellises_;        // parallel to code_->codes
  std::vector<std::array<Port, 2>> ends_;     // per bit, its two constraints
  std::vector<std::uint32_t> port_base_;      // flat (check, slot) indexing
  std::uint32_t num_ports_ = 0;
};

// One-shot convenience wrapper.
DecodeResult decode(const GldpcCode& code, const std::vector<double>& channel_llrs,
                    std::uint32_t max_iterations = 50, bool early_stop = true);

}  // namespace expander

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expander/gldpc.hpp"

namespace expander {

struct SimConfig {
  std::vector<double> snr_db;      // E_b/N_0 points
  std::uint64_t max_frames = 1000;
  std::uint64_t max_errors = 0;    // frame errors per point; 0 = frames only
  std::uint32_t max_iterations = 50;
  std::uint64_t seed = 1;
  bool early_stop = true;
  std::uint32_t workers = 1;
};

struct BerPoint {
  double snr_db = 0;
  std::uint64_t frames = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t frame_errors = 0;
  double ber = 0;
  double fer = 0;
  double avg_iterations = 0;
};

// BPSK over AWGN, all-zero transmission (valid by linearity and channel
// symmetry). sigma^2 = 1 / (2 r E_b/N_0) with r the true rate when the
// parity matrix fits in memory, the design rate otherwise. Frame f at point
// s draws its noise from a stream derived from (seed, s, f), so results are
// bit-identical for any worker count.
std::vector<BerPoint> simulate(const GldpcCode& code, const SimConfig& cfg);

double uncoded_bpsk_ber(double snr_db);  // Q(sqrt(2 E_b/N_0))

std::string ber_csv(const std::vector<BerPoint>& points);
void write_ber_csv(const std::string& path, const std::vector<BerPoint>& points);

}  // namespace expander

#include "expander/simulate.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "expander/decoder.hpp"
#include "expander/error.hpp"
#include "expander/rng.hpp"

namespace expander {

namespace {

// Frames are dispatched in fixed-size batches so the stopping decision sees
// the same aggregate counts no matter how many workers ran the batch.
constexpr std::uint64_t kBatch = 64;

struct FrameTally {
  std::uint64_t bit_errors = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t iterations = 0;
};

FrameTally run_frame(const GldpcDecoder& dec, const SimConfig& cfg, double sigma,
                     std::uint64_t snr_idx, std::uint64_t frame) {
  const GldpcCode& code = dec.code();
  Rng rng(Rng::derive(cfg.seed, snr_idx, frame));
  std::vector<double> llr(code.n_bits);
  const double scale = 2.0 / (sigma * sigma);
  for (std::uint64_t i = 0; i < code.n_bits; ++i)
    llr[i] = scale * (1.0 + sigma * rng.gaussian());

  const DecodeResult r = dec.decode(llr, cfg.max_iterations, cfg.early_stop);
  FrameTally t;
  for (std::uint8_t b : r.hard) t.bit_errors += b;
  t.frame_errors = t.bit_errors > 0 ? 1 : 0;
  t.iterations = r.iterations;
  return t;
}

}  // namespace

std::vector<BerPoint> simulate(const GldpcCode& code, const SimConfig& cfg) {
  if (cfg.snr_db.empty()) throw Error(Errc::bad_input, "empty snr list");
  if (cfg.max_frames == 0) throw Error(Errc::bad_input, "max_frames must be positive");
  if (cfg.max_iterations == 0)
    throw Error(Errc::bad_input, "max_iterations must be positive");

  const GldpcDecoder dec(code);
  const double rate =
      code.n_bits <= GldpcCode::kDenseBits ? true_rate(code) : code.design_rate();
  const std::uint32_t workers = std::max<std::uint32_t>(1, cfg.workers);

  std::vector<BerPoint> out;
  for (std::size_t s = 0; s < cfg.snr_db.size(); ++s) {
    const double ebn0 = std::pow(10.0, cfg.snr_db[s] / 10.0);
    const double sigma = std::sqrt(1.0 / (2.0 * rate * ebn0));

    BerPoint p;
    p.snr_db = cfg.snr_db[s];
    std::uint64_t next_frame = 0;
    while (next_frame < cfg.max_frames &&
           (cfg.max_errors == 0 || p.frame_errors < cfg.max_errors)) {
      const std::uint64_t batch =
          std::min(kBatch, cfg.max_frames - next_frame);
      std::vector<FrameTally> tallies(batch);
      if (workers == 1 || batch == 1) {
        for (std::uint64_t f = 0; f < batch; ++f)
          tallies[f] = run_frame(dec, cfg, sigma, s, next_frame + f);
      } else {
        std::atomic<std::uint64_t> cursor{0};
        auto work = [&] {
          for (;;) {
            const std::uint64_t f = cursor.fetch_add(1);
            if (f >= batch) return;
            tallies[f] = run_frame(dec, cfg, sigma, s, next_frame + f);
          }
        };
        std::vector<std::thread> pool;
        for (std::uint32_t w = 0; w + 1 < workers; ++w) pool.emplace_back(work);
        work();
        for (auto& th : pool) th.join();
      }
      for (const FrameTally& t : tallies) {
        p.bit_errors += t.bit_errors;
        p.frame_errors += t.frame_errors;
        p.avg_iterations += double(t.iterations);
      }
      next_frame += batch;
    }
    p.frames = next_frame;
    p.ber = double(p.bit_errors) / (double(p.frames) * double(code.n_bits));
    p.fer = double(p.frame_errors) / double(p.frames);
    p.avg_iterations /= double(p.frames);
    out.push_back(p);
  }
  return out;
}

double uncoded_bpsk_ber(double snr_db) {
  const double ebn0 = std::pow(10.0, snr_db / 10.0);
  return 0.5 * std::erfc(std::sqrt(ebn0));
}

std::string ber_csv(const std::vector<BerPoint>& points) {
  std::string out = "snr_db,frames,bit_errors,frame_errors,ber,fer,avg_iterations\n";
  char line[256];
  for (const BerPoint& p : points) {
    std::snprintf(line, sizeof line, "%.10g,%llu,%llu,%llu,%.10g,%.10g,%.10g\n",
                  p.snr_db, (unsigned long long)p.frames,
                  (unsigned long long)p.bit_errors,
                  (unsigned long long)p.frame_errors, p.ber, p.fer,
                  p.avg_iterations);
    out += line;
  }
  return out;
}

void write_ber_csv(const std::string& path, const std::vector<BerPoint>& points) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io_error, "cannot open " + path);
  f << ber_csv(points);
}

}  // namespace expander

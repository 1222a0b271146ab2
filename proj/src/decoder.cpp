#include "expander/decoder.hpp"

#include <algorithm>

#include "expander/error.hpp"

namespace expander {

GldpcDecoder::GldpcDecoder(const GldpcCode& code) : code_(&code) {
  trellises_.reserve(code.codes.size());
  for (const LinearCode& c : code.codes) trellises_.emplace_back(c);

  const std::uint64_t nv = code.num_vertices();
  port_base_.assign(nv + 1, 0);
  for (std::uint64_t v = 0; v < nv; ++v)
    port_base_[v + 1] = port_base_[v] + std::uint32_t(code.edge_order[v].size());
  num_ports_ = port_base_[nv];

  ends_.assign(code.n_bits, {Port{0, 0}, Port{0, 0}});
  std::vector<std::uint8_t> seen(code.n_bits, 0);
  for (std::uint64_t v = 0; v < nv; ++v) {
    for (std::uint32_t s = 0; s < code.edge_order[v].size(); ++s) {
      const std::uint64_t bit = code.edge_order[v][s];
      ends_[bit][seen[bit]++] = Port{std::uint32_t(v), s};
    }
  }
}

DecodeResult GldpcDecoder::decode(const std::vector<double>& channel_llrs,
                                  std::uint32_t max_iterations,
                                  bool early_stop) const {
  const GldpcCode& code = *code_;
  if (channel_llrs.size() != code.n_bits)
    throw Error(Errc::length_mismatch, "llr length != n_bits");

  // msg[k] for flat port k = extrinsic sent toward that constraint by the
  // bit's other endpoint; starts neutral.
  std::vector<double> msg(num_ports_, 0.0), next_msg(num_ports_, 0.0);
  std::vector<double> ext(num_ports_, 0.0);

  DecodeResult res;
  res.hard.assign(code.n_bits, 0);

  std::vector<double> local_in, local_out;
  const std::uint64_t nv = code.num_vertices();
  for (std::uint32_t it = 1; it <= max_iterations; ++it) {
    for (std::uint64_t v = 0; v < nv; ++v) {
      const auto& order = code.edge_order[v];
      local_in.resize(order.size());
      for (std::uint32_t s = 0; s < order.size(); ++s)
        local_in[s] = channel_llrs[order[s]] + msg[port_base_[v] + s];
      local_out = bcjr_extrinsic(trellises_[code.assignment[v]], local_in);
      for (std::uint32_t s = 0; s < order.size(); ++s) {
        const std::uint64_t bit = order[s];
        ext[port_base_[v] + s] = local_out[s];
        const Port other = ends_[bit][0].check == v && ends_[bit][0].slot == s
                               ? ends_[bit][1]
                               : ends_[bit][0];
        next_msg[port_base_[other.check] + other.slot] = local_out[s];
      }
    }
    msg.swap(next_msg);
    res.iterations = it;

    for (std::uint64_t bit = 0; bit < code.n_bits; ++bit) {
      const Port a = ends_[bit][0], b = ends_[bit][1];
      const double total = channel_llrs[bit] + ext[port_base_[a.check] + a.slot] +
                           ext[port_base_[b.check] + b.slot];
      res.hard[bit] = total < 0 ? 1 : 0;
    }
    if (is_codeword(code, res.hard)) {
      res.converged = true;
      if (early_stop) break;
    } else {
      res.converged = false;
    }
  }
  return res;
}

DecodeResult decode(const GldpcCode& code, const std::vector<double>& channel_llrs,
                    std::uint32_t max_iterations, bool early_stop) {
  return GldpcDecoder(code).decode(channel_llrs, max_iterations, early_stop);
}

}  // namespace expander

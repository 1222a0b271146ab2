#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expander/gf2.hpp"
#include "expander/linear_code.hpp"
#include "expander/rotation_graph.hpp"

namespace expander {

// Generalized LDPC code: the edges of a graph carry the code bits and each
// vertex imposes its subcode on the incident bits in port order. Every bit
// sits in exactly two constraints, so the underlying graph must be free of
// loops of either kind.
struct GldpcCode {
  std::vector<LinearCode> codes;          // distinct subcodes
  std::vector<std::uint32_t> assignment;  // vertex -> index into codes
  // edge_order[v][i] = global bit id of the edge at port i of v. Bit ids are
  // assigned by ascending lower dart (regular) or left dart (bipartite).
  std::vector<std::vector<std::uint64_t>> edge_order;
  std::uint64_t n_bits = 0;
  std::uint64_t num_checks = 0;  // sum over vertices of (n_v - k_v)
  // Vertices below num_left are the left side of a bipartite build; 0 when
  // the source graph was regular.
  std::uint64_t num_left = 0;
  bool bipartite = false;
  // Stacked parity-check matrix, one row block per vertex; materialized only
  // when n_bits <= kDenseBits (the flag says which).
  Gf2Matrix h_global;
  bool h_global_built = false;
  // design rate 1 - num_checks/n_bits as a reduced fraction
  std::int64_t rate_num = 0;
  std::int64_t rate_den = 1;

  static constexpr std::uint64_t kDenseBits = 20000;

  std::uint64_t num_vertices() const { return assignment.size(); }
  const LinearCode& vertex_code(std::uint64_t v) const { return codes[assignment[v]]; }
  double design_rate() const { return double(rate_num) / double(rate_den); }
};

// assignment[v] picks codes[assignment[v]] for vertex v; lengths must match
// the vertex degrees. For the bipartite overload vertices are numbered left
// side first.
GldpcCode assemble(const RotationGraph& g, const std::vector<LinearCode>& codes,
                   const std::vector<std::uint32_t>& assignment);
GldpcCode assemble(const BipartiteGraph& g, const std::vector<LinearCode>& codes,
                   const std::vector<std::uint32_t>& assignment);

GldpcCode assemble_uniform(const RotationGraph& g, const LinearCode& code);
// Alternates two codes by vertex parity; the mixed-rate option for odd
// degree targets.
GldpcCode assemble_alternating(const RotationGraph& g, const LinearCode& even,
                               const LinearCode& odd);
GldpcCode assemble_two_sided(const BipartiteGraph& g, const LinearCode& left,
                             const LinearCode& right);

// The stacked matrix regardless of size caps; callers own the memory risk.
Gf2Matrix build_h_global(const GldpcCode& code);

std::uint64_t h_global_rank(const GldpcCode& code);  // needs n_bits <= kDenseBits
// 1 - rank/n_bits; at least the design rate.
double true_rate(const GldpcCode& code);

// Every vertex's local projection is a codeword of its subcode.
bool is_codeword(const GldpcCode& code, const std::vector<std::uint8_t>& bits);

// Sparse text export of the stacked parity-check matrix: dimensions, max
// degrees, per-column and per-row degree lists, then 1-based index lists.
std::string to_alist(const GldpcCode& code);
void write_alist(const GldpcCode& code, const std::string& path);

// Full round-trippable serialization (subcodes, assignment, edge order).
std::string gldpc_to_json(const GldpcCode& code);
GldpcCode gldpc_from_json(const std::string& text);
void write_gldpc(const GldpcCode& code, const std::string& path);
GldpcCode read_gldpc(const std::string& path);

}  // namespace expander

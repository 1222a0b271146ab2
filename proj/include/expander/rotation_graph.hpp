#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expander/edge_list.hpp"

namespace expander {

// Port-labeled undirected multigraph. Each vertex owns ports 0..d-1; a dart
// is the flat index v*d + i. rot is an involution pairing darts: the two
// sides of one edge. A self-loop consumes two ports of the same vertex.
// A fixed dart rot(x) == x is a half-loop; it is rejected unless the graph
// was built with allow_half_loops (squaring an odd-degree graph leaves one
// unpaired backtrack walk per vertex, which is the only internal source).
class RotationGraph {
 public:
  RotationGraph(std::uint64_t num_vertices, std::uint32_t degree,
                std::vector<std::uint64_t> rot, bool allow_half_loops = false);

  // Builds a d-regular rotation graph from an undirected edge list, numbering
  // each vertex's ports by a seeded shuffle of its incident edge ends.
  static RotationGraph from_edge_list(const EdgeList& el, std::uint64_t seed);

  std::uint64_t num_vertices() const { return n_; }
  std::uint32_t degree() const { return d_; }
  std::uint64_t num_darts() const { return rot_.size(); }
  // Edges; half-loops count as one edge.
  std::uint64_t num_edges() const;
  std::uint64_t num_half_loops() const;

  std::uint64_t rot(std::uint64_t dart) const { return rot_[dart]; }
  std::pair<std::uint64_t, std::uint32_t> rot(std::uint64_t v, std::uint32_t i) const {
    const std::uint64_t t = rot_[v * d_ + i];
    return {t / d_, std::uint32_t(t % d_)};
  }
  std::uint64_t dart(std::uint64_t v, std::uint32_t i) const { return v * d_ + i; }
  std::uint64_t dart_vertex(std::uint64_t dart) const { return dart / d_; }
  std::uint32_t dart_port(std::uint64_t dart) const { return std::uint32_t(dart % d_); }
  // Vertex reached along port i of v.
  std::uint64_t head(std::uint64_t v, std::uint32_t i) const { return rot_[v * d_ + i] / d_; }

  bool is_connected() const;
  EdgeList to_edge_list() const;

 private:
  std::uint64_t n_;
  std::uint32_t d_;
  std::vector<std::uint64_t> rot_;
};

// Biregular bipartite multigraph with independent port spaces per side.
// A left dart is v*c + i, a right dart w*d + j; rot maps left darts to right
// darts and rinv is its inverse. No loops can exist across sides.
class BipartiteGraph {
 public:
  BipartiteGraph(std::uint64_t num_left, std::uint64_t num_right, std::uint32_t left_degree,
                 std::uint32_t right_degree, std::vector<std::uint64_t> rot);

  static BipartiteGraph from_edge_list(const EdgeList& el, std::uint64_t seed);

  std::uint64_t num_left() const { return nl_; }
  std::uint64_t num_right() const { return nr_; }
  std::uint32_t left_degree() const { return c_; }
  std::uint32_t right_degree() const { return d_; }
  std::uint64_t num_edges() const { return rot_.size(); }

  // Left dart (v,i) -> (right vertex, right port).
  std::pair<std::uint64_t, std::uint32_t> rot(std::uint64_t v, std::uint32_t i) const {
    const std::uint64_t t = rot_[v * c_ + i];
    return {t / d_, std::uint32_t(t % d_)};
  }
  // Right dart (w,j) -> (left vertex, left port).
  std::pair<std::uint64_t, std::uint32_t> rinv(std::uint64_t w, std::uint32_t j) const {
    const std::uint64_t t = rinv_[w * d_ + j];
    return {t / c_, std::uint32_t(t % c_)};
  }
  std::uint64_t rot_flat(std::uint64_t left_dart) const { return rot_[left_dart]; }
  std::uint64_t rinv_flat(std::uint64_t right_dart) const { return rinv_[right_dart]; }

  bool is_connected() const;
  EdgeList to_edge_list() const;

 private:
  std::uint64_t nl_, nr_;
  std::uint32_t c_, d_;
  std::vector<std::uint64_t> rot_;
  std::vector<std::uint64_t> rinv_;
};

// Shortest cycle length; nullopt when acyclic. A self-loop or half-loop is a
// length-1 cycle, parallel edges form a length-2 cycle.
std::optional<std::uint64_t> girth(const RotationGraph& g);
std::optional<std::uint64_t> girth(const BipartiteGraph& g);

// Largest finite eccentricity; nullopt when disconnected (infinite).
std::optional<std::uint64_t> diameter(const RotationGraph& g);
// Diameter over the union of both sides.
std::optional<std::uint64_t> diameter(const BipartiteGraph& g);

// Walk composition G^2 on the same vertex set: port (k1,k2) walks port k1 from
// v to (u,j1), then port k2 from u to (w,j2), landing on port (j2,j1) of w.
// Backtrack walks (k2 == j1) are fixed under that pairing; per vertex they are
// re-paired in ascending port order into two-port self-loops, so only an
// odd-degree input leaves one half-loop per vertex.
RotationGraph square(const RotationGraph& g);

// Odd walk power of a bipartite graph. Left ports are tuples over alternating
// radices (c,d,c,...,c); the companion right dart reverses the arrival ports.
// Even exponents would collapse sides and are rejected.
BipartiteGraph bipartite_power(const BipartiteGraph& g, std::uint32_t e);

// Bipartite double cover of a directed regular graph: one left and one right
// copy per vertex, edge (u -> v) becomes left-u ~ right-v. Ports are numbered
// by a seeded shuffle per side.
BipartiteGraph double_cover(const EdgeList& directed, std::uint64_t seed);

std::string to_dot(const RotationGraph& g);
std::string to_dot(const BipartiteGraph& g);

}  // namespace expander

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace expander {

enum class EdgeListKind { undirected, directed, bipartite };

// Plain edge container. Vertices are 0-based. For kind == bipartite the pair
// is (left vertex, right vertex) and the two sides are indexed independently.
struct EdgeList {
  EdgeListKind kind = EdgeListKind::undirected;
  std::uint64_t n = 0;  // vertex count (left side count for bipartite)
  std::uint64_t m = 0;  // right side count for bipartite, edge count otherwise
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;

  std::uint64_t num_edges() const { return edges.size(); }
};

// Text format: header "N M directed|undirected|bipartite", one "u v" line per
// edge, 0-based. For undirected/directed graphs M is the edge count; for
// bipartite graphs N and M are the side sizes and edges run to end of file.
EdgeList read_edge_list(const std::string& path);
void write_edge_list(const EdgeList& el, const std::string& path);

}  // namespace expander

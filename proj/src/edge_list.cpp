#include "expander/edge_list.hpp"

#include <fstream>
#include <sstream>

#include "expander/error.hpp"

namespace expander {

EdgeList read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open " + path);
  EdgeList el;
  std::string kind;
  if (!(in >> el.n >> el.m >> kind)) throw Error(Errc::bad_input, "bad header in " + path);
  if (kind == "undirected") {
    el.kind = EdgeListKind::undirected;
  } else if (kind == "directed") {
    el.kind = EdgeListKind::directed;
  } else if (kind == "bipartite") {
    el.kind = EdgeListKind::bipartite;
  } else {
    throw Error(Errc::bad_input, "unknown edge list kind '" + kind + "' in " + path);
  }
  std::uint64_t u, v;
  while (in >> u >> v) {
    const std::uint64_t ulim = el.n;
    const std::uint64_t vlim = el.kind == EdgeListKind::bipartite ? el.m : el.n;
    if (u >= ulim || v >= vlim)
      throw Error(Errc::bad_input, "endpoint out of range in " + path);
    el.edges.emplace_back(u, v);
  }
  if (el.kind != EdgeListKind::bipartite && el.edges.size() != el.m)
    throw Error(Errc::bad_input, "edge count does not match header in " + path);
  return el;
}

void write_edge_list(const EdgeList& el, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_error, "cannot open " + path + " for writing");
  const char* kind = el.kind == EdgeListKind::undirected   ? "undirected"
                     : el.kind == EdgeListKind::directed   ? "directed"
                                                           : "bipartite";
  const std::uint64_t m = el.kind == EdgeListKind::bipartite ? el.m : el.edges.size();
  out << el.n << ' ' << m << ' ' << kind << '\n';
  for (const auto& [u, v] : el.edges) out << u << ' ' << v << '\n';
  if (!out) throw Error(Errc::io_error, "write failed for " + path);
}

}  // namespace expander

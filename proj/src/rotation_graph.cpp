#include "expander/rotation_graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "expander/error.hpp"
#include "expander/rng.hpp"

namespace expander {

namespace {

constexpr std::uint64_t kNoDart = ~std::uint64_t(0);

// Unified adjacency view for cycle/distance routines. For bipartite graphs
// right vertices are offset by the left count. eid identifies the undirected
// edge so traversal can avoid walking straight back along its arrival edge
// while still seeing parallel edges.
struct Adj {
  std::uint64_t n = 0;
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> nbr;  // (head, eid)
};

Adj build_adj(const RotationGraph& g) {
  Adj a;
  a.n = g.num_vertices();
  a.nbr.resize(a.n);
  const std::uint32_t d = g.degree();
  for (std::uint64_t v = 0; v < a.n; ++v) {
    for (std::uint32_t i = 0; i < d; ++i) {
      const std::uint64_t dart = v * d + i;
      const std::uint64_t partner = g.rot(dart);
      a.nbr[v].emplace_back(partner / d, std::min(dart, partner));
    }
  }
  return a;
}

Adj build_adj(const BipartiteGraph& g) {
  Adj a;
  a.n = g.num_left() + g.num_right();
  a.nbr.resize(a.n);
  for (std::uint64_t v = 0; v < g.num_left(); ++v)
    for (std::uint32_t i = 0; i < g.left_degree(); ++i) {
      const std::uint64_t ldart = v * g.left_degree() + i;
      a.nbr[v].emplace_back(g.num_left() + g.rot_flat(ldart) / g.right_degree(), ldart);
    }
  for (std::uint64_t w = 0; w < g.num_right(); ++w)
    for (std::uint32_t j = 0; j < g.right_degree(); ++j) {
      const std::uint64_t rdart = w * g.right_degree() + j;
      a.nbr[g.num_left() + w].emplace_back(g.rinv_flat(rdart) / g.left_degree(),
                                           g.rinv_flat(rdart));
    }
  return a;
}

std::optional<std::uint64_t> girth_of(const Adj& a) {
  for (std::uint64_t v = 0; v < a.n; ++v)
    for (const auto& [w, eid] : a.nbr[v])
      if (w == v) return 1;
  // Parallel edges: same head reached by two distinct edges.
  for (std::uint64_t v = 0; v < a.n; ++v) {
    auto heads = a.nbr[v];
    std::sort(heads.begin(), heads.end());
    for (std::size_t i = 1; i < heads.size(); ++i)
      if (heads[i].first == heads[i - 1].first && heads[i].second != heads[i - 1].second)
        return 2;
  }
  std::uint64_t best = kNoDart;
  std::vector<std::uint64_t> dist(a.n), via(a.n);
  std::vector<std::uint64_t> stamp(a.n, kNoDart);
  for (std::uint64_t s = 0; s < a.n; ++s) {
    std::queue<std::uint64_t> q;
    q.push(s);
    dist[s] = 0;
    via[s] = kNoDart;
    stamp[s] = s;
    while (!q.empty()) {
      const std::uint64_t u = q.front();
      q.pop();
      if (best != kNoDart && 2 * dist[u] + 1 >= best) break;
      for (const auto& [w, eid] : a.nbr[u]) {
        if (eid == via[u]) continue;
        if (stamp[w] != s) {
          stamp[w] = s;
          dist[w] = dist[u] + 1;
          via[w] = eid;
          q.push(w);
        } else {
          const std::uint64_t cand = dist[u] + dist[w] + 1;
          if (cand < best || best == kNoDart) best = cand;
        }
      }
    }
  }
  if (best == kNoDart) return std::nullopt;
  return best;
}

std::optional<std::uint64_t> diameter_of(const Adj& a) {
  if (a.n == 0) return std::nullopt;
  std::uint64_t best = 0;
  std::vector<std::uint64_t> dist(a.n);
  std::vector<std::uint64_t> stamp(a.n, kNoDart);
  for (std::uint64_t s = 0; s < a.n; ++s) {
    std::queue<std::uint64_t> q;
    q.push(s);
    dist[s] = 0;
    stamp[s] = s;
    std::uint64_t seen = 1;
    while (!q.empty()) {
      const std::uint64_t u = q.front();
      q.pop();
      best = std::max(best, dist[u]);
      for (const auto& [w, eid] : a.nbr[u]) {
        (void)eid;
        if (stamp[w] != s) {
          stamp[w] = s;
          dist[w] = dist[u] + 1;
          q.push(w);
          ++seen;
        }
      }
    }
    if (seen != a.n) return std::nullopt;
  }
  return best;
}

bool connected_of(const Adj& a) {
  if (a.n == 0) return true;
  std::vector<char> seen(a.n, 0);
  std::queue<std::uint64_t> q;
  q.push(0);
  seen[0] = 1;
  std::uint64_t count = 1;
  while (!q.empty()) {
    const std::uint64_t u = q.front();
    q.pop();
    for (const auto& [w, eid] : a.nbr[u]) {
      (void)eid;
      if (!seen[w]) {
        seen[w] = 1;
        q.push(w);
        ++count;
      }
    }
  }
  return count == a.n;
}

}  // namespace

RotationGraph::RotationGraph(std::uint64_t num_vertices, std::uint32_t degree,
                             std::vector<std::uint64_t> rot, bool allow_half_loops)
    : n_(num_vertices), d_(degree), rot_(std::move(rot)) {
  if (rot_.size() != n_ * std::uint64_t(d_))
    throw Error(Errc::bad_input, "rotation table size does not match n*d");
  for (std::uint64_t x = 0; x < rot_.size(); ++x) {
    if (rot_[x] >= rot_.size()) throw Error(Errc::bad_input, "rotation target out of range");
    if (rot_[rot_[x]] != x) throw Error(Errc::bad_input, "rotation map is not an involution");
    if (rot_[x] == x && !allow_half_loops)
      throw Error(Errc::half_loop, "fixed dart at vertex " + std::to_string(x / d_));
  }
}

std::uint64_t RotationGraph::num_edges() const {
  std::uint64_t half_loops = num_half_loops();
  return (rot_.size() - half_loops) / 2 + half_loops;
}

std::uint64_t RotationGraph::num_half_loops() const {
  std::uint64_t c = 0;
  for (std::uint64_t x = 0; x < rot_.size(); ++x)
    if (rot_[x] == x) ++c;
  return c;
}

RotationGraph RotationGraph::from_edge_list(const EdgeList& el, std::uint64_t seed) {
  if (el.kind != EdgeListKind::undirected)
    throw Error(Errc::bad_input, "from_edge_list expects an undirected edge list");
  const std::uint64_t n = el.n;
  if (n == 0) throw Error(Errc::bad_input, "empty vertex set");
  std::vector<std::uint64_t> deg(n, 0);
  for (const auto& [u, v] : el.edges) {
    if (u >= n || v >= n) throw Error(Errc::bad_input, "edge endpoint out of range");
    ++deg[u];
    ++deg[v];
  }
  for (std::uint64_t v = 1; v < n; ++v)
    if (deg[v] != deg[0])
      throw Error(Errc::non_regular, "vertex " + std::to_string(v) + " has degree " +
                                         std::to_string(deg[v]) + " != " + std::to_string(deg[0]));
  const std::uint32_t d = std::uint32_t(deg[0]);
  // Edge end t of edge e is slot 2e+t; slots at each vertex get ports by a
  // per-vertex seeded shuffle.
  std::vector<std::vector<std::uint64_t>> slots(n);
  for (std::uint64_t v = 0; v < n; ++v) slots[v].reserve(d);
  for (std::uint64_t e = 0; e < el.edges.size(); ++e) {
    slots[el.edges[e].first].push_back(2 * e);
    slots[el.edges[e].second].push_back(2 * e + 1);
  }
  std::vector<std::uint64_t> slot_dart(2 * el.edges.size());
  for (std::uint64_t v = 0; v < n; ++v) {
    Rng rng(Rng::derive(seed, 0x757ee9ed, v));
    rng.shuffle(slots[v]);
    for (std::uint32_t i = 0; i < d; ++i) slot_dart[slots[v][i]] = v * d + i;
  }
  std::vector<std::uint64_t> rot(n * std::uint64_t(d));
  for (std::uint64_t e = 0; e < el.edges.size(); ++e) {
    rot[slot_dart[2 * e]] = slot_dart[2 * e + 1];
    rot[slot_dart[2 * e + 1]] = slot_dart[2 * e];
  }
  return RotationGraph(n, d, std::move(rot));
}

bool RotationGraph::is_connected() const { return connected_of(build_adj(*this)); }

EdgeList RotationGraph::to_edge_list() const {
  EdgeList el;
  el.kind = EdgeListKind::undirected;
  el.n = n_;
  for (std::uint64_t x = 0; x < rot_.size(); ++x)
    if (rot_[x] >= x) el.edges.emplace_back(x / d_, rot_[x] / d_);
  el.m = el.edges.size();
  return el;
}

BipartiteGraph::BipartiteGraph(std::uint64_t num_left, std::uint64_t num_right,
                               std::uint32_t left_degree, std::uint32_t right_degree,
                               std::vector<std::uint64_t> rot)
    : nl_(num_left), nr_(num_right), c_(left_degree), d_(right_degree), rot_(std::move(rot)) {
  if (nl_ * std::uint64_t(c_) != nr_ * std::uint64_t(d_))
    throw Error(Errc::side_mismatch, "left and right dart counts differ");
  if (rot_.size() != nl_ * std::uint64_t(c_))
    throw Error(Errc::bad_input, "rotation table size does not match n*c");
  rinv_.assign(rot_.size(), kNoDart);
  for (std::uint64_t x = 0; x < rot_.size(); ++x) {
    if (rot_[x] >= rot_.size()) throw Error(Errc::bad_input, "rotation target out of range");
    if (rinv_[rot_[x]] != kNoDart)
      throw Error(Errc::non_biregular, "rotation map is not a dart bijection");
    rinv_[rot_[x]] = x;
  }
}

BipartiteGraph BipartiteGraph::from_edge_list(const EdgeList& el, std::uint64_t seed) {
  if (el.kind != EdgeListKind::bipartite)
    throw Error(Errc::bad_input, "bipartite_from_edge_list expects a bipartite edge list");
  const std::uint64_t nl = el.n, nr = el.m;
  if (nl == 0 || nr == 0) throw Error(Errc::bad_input, "empty side");
  std::vector<std::uint64_t> ldeg(nl, 0), rdeg(nr, 0);
  for (const auto& [u, w] : el.edges) {
    if (u >= nl || w >= nr) throw Error(Errc::bad_input, "edge endpoint out of range");
    ++ldeg[u];
    ++rdeg[w];
  }
  for (std::uint64_t v = 1; v < nl; ++v)
    if (ldeg[v] != ldeg[0]) throw Error(Errc::non_biregular, "left degrees differ");
  for (std::uint64_t w = 1; w < nr; ++w)
    if (rdeg[w] != rdeg[0]) throw Error(Errc::non_biregular, "right degrees differ");
  const std::uint32_t c = std::uint32_t(ldeg[0]), d = std::uint32_t(rdeg[0]);
  std::vector<std::vector<std::uint64_t>> lslots(nl), rslots(nr);
  for (std::uint64_t e = 0; e < el.edges.size(); ++e) {
    lslots[el.edges[e].first].push_back(e);
    rslots[el.edges[e].second].push_back(e);
  }
  std::vector<std::uint64_t> edge_ldart(el.edges.size()), edge_rdart(el.edges.size());
  for (std::uint64_t v = 0; v < nl; ++v) {
    Rng rng(Rng::derive(seed, 0x1ef7ba11, v));
    rng.shuffle(lslots[v]);
    for (std::uint32_t i = 0; i < c; ++i) edge_ldart[lslots[v][i]] = v * c + i;
  }
  for (std::uint64_t w = 0; w < nr; ++w) {
    Rng rng(Rng::derive(seed, 0x2ef7ba11, w));
    rng.shuffle(rslots[w]);
    for (std::uint32_t j = 0; j < d; ++j) edge_rdart[rslots[w][j]] = w * d + j;
  }
  std::vector<std::uint64_t> rot(nl * std::uint64_t(c));
  for (std::uint64_t e = 0; e < el.edges.size(); ++e) rot[edge_ldart[e]] = edge_rdart[e];
  return BipartiteGraph(nl, nr, c, d, std::move(rot));
}

bool BipartiteGraph::is_connected() const { return connected_of(build_adj(*this)); }

EdgeList BipartiteGraph::to_edge_list() const {
  EdgeList el;
  el.kind = EdgeListKind::bipartite;
  el.n = nl_;
  el.m = nr_;
  for (std::uint64_t x = 0; x < rot_.size(); ++x) el.edges.emplace_back(x / c_, rot_[x] / d_);
  return el;
}

std::optional<std::uint64_t> girth(const RotationGraph& g) { return girth_of(build_adj(g)); }
std::optional<std::uint64_t> girth(const BipartiteGraph& g) { return girth_of(build_adj(g)); }
std::optional<std::uint64_t> diameter(const RotationGraph& g) { return diameter_of(build_adj(g)); }
std::optional<std::uint64_t> diameter(const BipartiteGraph& g) { return diameter_of(build_adj(g)); }

RotationGraph square(const RotationGraph& g) {
  const std::uint64_t n = g.num_vertices();
  const std::uint64_t d = g.degree();
  const std::uint64_t dd = d * d;
  if (n * dd > (std::uint64_t(1) << 33))
    throw Error(Errc::size_exceeded, "square would exceed the dart budget");
  std::vector<std::uint64_t> rot(n * dd);
  for (std::uint64_t v = 0; v < n; ++v) {
    for (std::uint32_t k1 = 0; k1 < d; ++k1) {
      const auto [u, j1] = g.rot(v, k1);
      for (std::uint32_t k2 = 0; k2 < d; ++k2) {
        const auto [w, j2] = g.rot(u, k2);
        rot[v * dd + k1 * d + k2] = w * dd + std::uint64_t(j2) * d + j1;
      }
    }
  }
  // Backtrack walks are fixed darts; re-pair them per vertex into self-loops.
  bool leftover = false;
  std::vector<std::uint64_t> fixed;
  for (std::uint64_t v = 0; v < n; ++v) {
    fixed.clear();
    for (std::uint64_t p = 0; p < dd; ++p)
      if (rot[v * dd + p] == v * dd + p) fixed.push_back(v * dd + p);
    for (std::size_t t = 0; t + 1 < fixed.size(); t += 2) {
      rot[fixed[t]] = fixed[t + 1];
      rot[fixed[t + 1]] = fixed[t];
    }
    if (fixed.size() % 2 == 1) leftover = true;
  }
  return RotationGraph(n, std::uint32_t(dd), std::move(rot), leftover);
}

BipartiteGraph bipartite_power(const BipartiteGraph& g, std::uint32_t e) {
  if (e % 2 == 0) throw Error(Errc::even_power, "even powers collapse the two sides");
  const std::uint64_t c = g.left_degree(), d = g.right_degree();
  std::uint64_t lc = 1, rd = 1;
  for (std::uint32_t s = 0; s < e; ++s) {
    lc *= (s % 2 == 0) ? c : d;
    rd *= (s % 2 == 0) ? d : c;
    if (g.num_left() * lc > (std::uint64_t(1) << 33))
      throw Error(Errc::size_exceeded, "power would exceed the dart budget");
  }
  std::vector<std::uint64_t> rot(g.num_left() * lc);
  std::vector<std::uint32_t> out(e), arr(e);
  for (std::uint64_t v = 0; v < g.num_left(); ++v) {
    for (std::uint64_t t = 0; t < lc; ++t) {
      // Decode big-endian mixed-radix out-port tuple (radices c,d,c,...,c).
      std::uint64_t rem = t;
      for (std::uint32_t s = e; s-- > 0;) {
        const std::uint64_t radix = (s % 2 == 0) ? c : d;
        out[s] = std::uint32_t(rem % radix);
        rem /= radix;
      }
      std::uint64_t cur = v;
      for (std::uint32_t s = 0; s < e; ++s) {
        if (s % 2 == 0) {
          const auto [w, j] = g.rot(cur, out[s]);
          cur = w;
          arr[s] = j;
        } else {
          const auto [u, i] = g.rinv(cur, out[s]);
          cur = u;
          arr[s] = i;
        }
      }
      // Companion right port tuple: reversed arrival ports (radices d,c,...,d).
      std::uint64_t ridx = 0;
      for (std::uint32_t s = e; s-- > 0;) {
        const std::uint64_t radix = (s % 2 == 0) ? d : c;
        ridx = ridx * radix + arr[s];
      }
      rot[v * lc + t] = cur * rd + ridx;
    }
  }
  return BipartiteGraph(g.num_left(), g.num_right(), std::uint32_t(lc), std::uint32_t(rd),
                        std::move(rot));
}

BipartiteGraph double_cover(const EdgeList& directed, std::uint64_t seed) {
  if (directed.kind != EdgeListKind::directed)
    throw Error(Errc::bad_input, "double_cover expects a directed edge list");
  const std::uint64_t n = directed.n;
  if (n == 0) throw Error(Errc::bad_input, "empty vertex set");
  std::vector<std::uint64_t> outdeg(n, 0);
  for (const auto& [u, v] : directed.edges) {
    if (u >= n || v >= n) throw Error(Errc::bad_input, "edge endpoint out of range");
    ++outdeg[u];
  }
  for (std::uint64_t v = 1; v < n; ++v)
    if (outdeg[v] != outdeg[0])
      throw Error(Errc::non_regular_out_degree, "vertex " + std::to_string(v) +
                                                    " has out-degree " + std::to_string(outdeg[v]));
  EdgeList bl;
  bl.kind = EdgeListKind::bipartite;
  bl.n = n;
  bl.m = n;
  bl.edges = directed.edges;
  return BipartiteGraph::from_edge_list(bl, seed);
}

std::string to_dot(const RotationGraph& g) {
  if (g.num_vertices() > 2000)
    throw Error(Errc::size_exceeded, "dot export is capped at 2000 vertices");
  std::ostringstream os;
  os << "graph g {\n";
  const std::uint32_t d = g.degree();
  for (std::uint64_t x = 0; x < g.num_darts(); ++x)
    if (g.rot(x) >= x) os << "  v" << x / d << " -- v" << g.rot(x) / d << ";\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const BipartiteGraph& g) {
  if (g.num_left() + g.num_right() > 2000)
    throw Error(Errc::size_exceeded, "dot export is capped at 2000 vertices");
  std::ostringstream os;
  os << "graph g {\n";
  for (std::uint64_t v = 0; v < g.num_left(); ++v) os << "  l" << v << " [shape=box];\n";
  for (std::uint64_t x = 0; x < g.num_edges(); ++x)
    os << "  l" << x / g.left_degree() << " -- r" << g.rot_flat(x) / g.right_degree() << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace expander

#include "expander/gldpc.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "expander/error.hpp"
#include "json.hpp"

namespace expander {

namespace {

// One-gigabyte ceiling for the stacked dense matrix.
constexpr std::uint64_t kWordBudget = std::uint64_t(1) << 27;

void finish(GldpcCode& code) {
  code.num_checks = 0;
  for (std::uint64_t v = 0; v < code.num_vertices(); ++v)
    code.num_checks += code.vertex_code(v).checks();
  const std::int64_t num = std::int64_t(code.n_bits) - std::int64_t(code.num_checks);
  const std::int64_t den = std::int64_t(code.n_bits);
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  code.rate_num = g ? num / g : num;
  code.rate_den = g ? den / g : 1;
  if (code.n_bits <= GldpcCode::kDenseBits) {
    code.h_global = build_h_global(code);
    code.h_global_built = true;
  }
}

void check_assignment(const std::vector<LinearCode>& codes,
                      const std::vector<std::uint32_t>& assignment, std::uint64_t vertices) {
  if (codes.empty()) throw Error(Errc::bad_input, "no subcodes");
  if (assignment.size() != vertices)
    throw Error(Errc::length_mismatch, "assignment length != vertex count");
  for (const std::uint32_t a : assignment)
    if (a >= codes.size()) throw Error(Errc::bad_input, "assignment index out of range");
}

}  // namespace

GldpcCode assemble(const RotationGraph& g, const std::vector<LinearCode>& codes,
                   const std::vector<std::uint32_t>& assignment) {
  check_assignment(codes, assignment, g.num_vertices());
  if (g.num_half_loops() != 0)
    throw Error(Errc::bad_input, "half-loop edges cannot carry a bit in two constraints");
  const std::uint32_t d = g.degree();
  for (std::uint64_t v = 0; v < g.num_vertices(); ++v) {
    if (codes[assignment[v]].n != d)
      throw Error(Errc::degree_mismatch, "subcode length " +
                                             std::to_string(codes[assignment[v]].n) +
                                             " != degree " + std::to_string(d));
    for (std::uint32_t i = 0; i < d; ++i)
      if (g.head(v, i) == v)
        throw Error(Errc::bad_input, "self-loop would put a bit twice in one constraint");
  }
  GldpcCode code;
  code.codes = codes;
  code.assignment = assignment;
  code.n_bits = g.num_edges();
  std::vector<std::uint64_t> edge_of_dart(g.num_darts());
  std::uint64_t next = 0;
  for (std::uint64_t x = 0; x < g.num_darts(); ++x)
    if (x < g.rot(x)) {
      edge_of_dart[x] = next;
      edge_of_dart[g.rot(x)] = next;
      ++next;
    }
  code.edge_order.resize(g.num_vertices());
  for (std::uint64_t v = 0; v < g.num_vertices(); ++v) {
    code.edge_order[v].resize(d);
    for (std::uint32_t i = 0; i < d; ++i) code.edge_order[v][i] = edge_of_dart[v * d + i];
  }
  finish(code);
  return code;
}

GldpcCode assemble(const BipartiteGraph& g, const std::vector<LinearCode>& codes,
                   const std::vector<std::uint32_t>& assignment) {
  const std::uint64_t vertices = g.num_left() + g.num_right();
  check_assignment(codes, assignment, vertices);
  for (std::uint64_t v = 0; v < vertices; ++v) {
    const std::uint32_t want = v < g.num_left() ? g.left_degree() : g.right_degree();
    if (codes[assignment[v]].n != want)
      throw Error(Errc::degree_mismatch, "subcode length " +
                                             std::to_string(codes[assignment[v]].n) +
                                             " != degree " + std::to_string(want));
  }
  GldpcCode code;
  code.codes = codes;
  code.assignment = assignment;
  code.bipartite = true;
  code.num_left = g.num_left();
  code.n_bits = g.num_edges();
  code.edge_order.resize(vertices);
  for (std::uint64_t v = 0; v < g.num_left(); ++v) {
    code.edge_order[v].resize(g.left_degree());
    for (std::uint32_t i = 0; i < g.left_degree(); ++i)
      code.edge_order[v][i] = v * g.left_degree() + i;
  }
  for (std::uint64_t w = 0; w < g.num_right(); ++w) {
    code.edge_order[g.num_left() + w].resize(g.right_degree());
    for (std::uint32_t j = 0; j < g.right_degree(); ++j)
      code.edge_order[g.num_left() + w][j] = g.rinv_flat(w * g.right_degree() + j);
  }
  finish(code);
  return code;
}

GldpcCode assemble_uniform(const RotationGraph& g, const LinearCode& code) {
  return assemble(g, {code}, std::vector<std::uint32_t>(g.num_vertices(), 0));
}

GldpcCode assemble_alternating(const RotationGraph& g, const LinearCode& even,
                               const LinearCode& odd) {
  std::vector<std::uint32_t> assignment(g.num_vertices());
  for (std::uint64_t v = 0; v < g.num_vertices(); ++v) assignment[v] = v % 2;
  return assemble(g, {even, odd}, assignment);
}

GldpcCode assemble_two_sided(const BipartiteGraph& g, const LinearCode& left,
                             const LinearCode& right) {
  std::vector<std::uint32_t> assignment(g.num_left() + g.num_right(), 1);
  for (std::uint64_t v = 0; v < g.num_left(); ++v) assignment[v] = 0;
  return assemble(g, {left, right}, assignment);
}

Gf2Matrix build_h_global(const GldpcCode& code) {
  const std::uint64_t words = (code.n_bits + 63) / 64;
  if (code.num_checks * words > kWordBudget)
    throw Error(Errc::size_exceeded, "stacked matrix exceeds the memory budget");
  Gf2Matrix h(std::uint32_t(code.num_checks), std::uint32_t(code.n_bits));
  std::uint32_t row = 0;
  for (std::uint64_t v = 0; v < code.num_vertices(); ++v) {
    const LinearCode& sub = code.vertex_code(v);
    for (std::uint32_t r = 0; r < sub.checks(); ++r, ++row)
      for (std::uint32_t i = 0; i < sub.n; ++i)
        if (sub.H.get(r, i)) h.set(row, std::uint32_t(code.edge_order[v][i]), true);
  }
  return h;
}

std::uint64_t h_global_rank(const GldpcCode& code) {
  if (code.n_bits > GldpcCode::kDenseBits)
    throw Error(Errc::too_large, "rank is computed only up to " +
                                     std::to_string(GldpcCode::kDenseBits) + " bits");
  return gf2_rank(code.h_global_built ? code.h_global : build_h_global(code));
}

double true_rate(const GldpcCode& code) {
  return 1.0 - double(h_global_rank(code)) / double(code.n_bits);
}

bool is_codeword(const GldpcCode& code, const std::vector<std::uint8_t>& bits) {
  if (bits.size() != code.n_bits) throw Error(Errc::length_mismatch, "bit vector length");
  for (std::uint64_t v = 0; v < code.num_vertices(); ++v) {
    const LinearCode& sub = code.vertex_code(v);
    for (std::uint32_t r = 0; r < sub.checks(); ++r) {
      std::uint8_t s = 0;
      for (std::uint32_t i = 0; i < sub.n; ++i)
        if (sub.H.get(r, i)) s ^= bits[code.edge_order[v][i]] & 1;
      if (s) return false;
    }
  }
  return true;
}

std::string to_alist(const GldpcCode& code) {
  std::vector<std::vector<std::uint64_t>> row_cols(code.num_checks);
  std::vector<std::vector<std::uint64_t>> col_rows(code.n_bits);
  std::uint64_t row = 0;
  for (std::uint64_t v = 0; v < code.num_vertices(); ++v) {
    const LinearCode& sub = code.vertex_code(v);
    for (std::uint32_t r = 0; r < sub.checks(); ++r, ++row)
      for (std::uint32_t i = 0; i < sub.n; ++i)
        if (sub.H.get(r, i)) {
          row_cols[row].push_back(code.edge_order[v][i]);
          col_rows[code.edge_order[v][i]].push_back(row);
        }
  }
  for (auto& cols : row_cols) std::sort(cols.begin(), cols.end());
  std::uint64_t max_col = 0, max_row = 0;
  for (const auto& c : col_rows) max_col = std::max<std::uint64_t>(max_col, c.size());
  for (const auto& r : row_cols) max_row = std::max<std::uint64_t>(max_row, r.size());
  std::ostringstream os;
  os << code.n_bits << ' ' << code.num_checks << '\n';
  os << max_col << ' ' << max_row << '\n';
  for (std::uint64_t c = 0; c < code.n_bits; ++c)
    os << col_rows[c].size() << (c + 1 == code.n_bits ? '\n' : ' ');
  for (std::uint64_t r = 0; r < code.num_checks; ++r)
    os << row_cols[r].size() << (r + 1 == code.num_checks ? '\n' : ' ');
  for (const auto& rows : col_rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) os << rows[i] + 1 << (i + 1 == rows.size() ? '\n' : ' ');
  }
  for (const auto& cols : row_cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) os << cols[i] + 1 << (i + 1 == cols.size() ? '\n' : ' ');
  }
  return os.str();
}

void write_alist(const GldpcCode& code, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io_error, "cannot open " + path);
  f << to_alist(code);
  if (!f) throw Error(Errc::io_error, "write failed on " + path);
}

std::string gldpc_to_json(const GldpcCode& code) {
  nlohmann::ordered_json j;
  j["n_bits"] = code.n_bits;
  j["num_checks"] = code.num_checks;
  j["bipartite"] = code.bipartite;
  j["num_left"] = code.num_left;
  j["rate_num"] = code.rate_num;
  j["rate_den"] = code.rate_den;
  j["codes"] = nlohmann::ordered_json::array();
  for (const auto& c : code.codes) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["n"] = c.n;
    jc["k"] = c.k;
    if (c.d_min)
      jc["d_min"] = *c.d_min;
    else
      jc["d_min"] = nullptr;
    auto rows = nlohmann::ordered_json::array();
    for (std::uint32_t r = 0; r < c.H.rows(); ++r) rows.push_back(c.H.row_string(r));
    jc["h_rows"] = rows;
    j["codes"].push_back(jc);
  }
  j["assignment"] = code.assignment;
  j["edge_order"] = code.edge_order;
  return j.dump(2) + "\n";
}

GldpcCode gldpc_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Errc::bad_input, std::string("bad code file: ") + e.what());
  }
  GldpcCode code;
  try {
    code.n_bits = j.at("n_bits").get<std::uint64_t>();
    code.bipartite = j.at("bipartite").get<bool>();
    code.num_left = j.at("num_left").get<std::uint64_t>();
    for (const auto& jc : j.at("codes")) {
      std::vector<std::string> rows;
      for (const auto& s : jc.at("h_rows")) rows.push_back(s.get<std::string>());
      std::optional<std::uint32_t> d;
      if (!jc.at("d_min").is_null()) d = jc.at("d_min").get<std::uint32_t>();
      code.codes.push_back(make_linear_code(jc.at("n").get<std::uint32_t>(),
                                            jc.at("k").get<std::uint32_t>(),
                                            Gf2Matrix::from_strings(rows), d,
                                            jc.at("name").get<std::string>()));
    }
    code.assignment = j.at("assignment").get<std::vector<std::uint32_t>>();
    code.edge_order = j.at("edge_order").get<std::vector<std::vector<std::uint64_t>>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::bad_input, std::string("bad code file: ") + e.what());
  }
  if (code.assignment.size() != code.edge_order.size())
    throw Error(Errc::bad_input, "assignment and edge order disagree");
  std::vector<std::uint32_t> uses(code.n_bits, 0);
  for (std::uint64_t v = 0; v < code.num_vertices(); ++v) {
    if (code.assignment[v] >= code.codes.size())
      throw Error(Errc::bad_input, "assignment index out of range");
    if (code.edge_order[v].size() != code.vertex_code(v).n)
      throw Error(Errc::degree_mismatch, "edge order length != subcode length");
    for (const std::uint64_t e : code.edge_order[v]) {
      if (e >= code.n_bits) throw Error(Errc::bad_input, "edge id out of range");
      ++uses[e];
    }
  }
  for (const std::uint32_t u : uses)
    if (u != 2) throw Error(Errc::bad_input, "every bit must sit in exactly two constraints");
  finish(code);
  if (code.num_checks != j.at("num_checks").get<std::uint64_t>())
    throw Error(Errc::bad_input, "stored check count disagrees with the subcodes");
  return code;
}

void write_gldpc(const GldpcCode& code, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io_error, "cannot open " + path);
  f << gldpc_to_json(code);
  if (!f) throw Error(Errc::io_error, "write failed on " + path);
}

GldpcCode read_gldpc(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return gldpc_from_json(ss.str());
}

}  // namespace expander

#include "expander/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "expander/error.hpp"

namespace expander {

namespace {

using nlohmann::ordered_json;

std::vector<std::uint64_t> rot_array(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw Error(Errc::io_error, std::string("graph json missing array field '") + key + "'");
  }
  return j.at(key).get<std::vector<std::uint64_t>>();
}

}  // namespace

std::string graph_to_json(const RotationGraph& g) {
  ordered_json j;
  j["kind"] = "rotation";
  j["num_vertices"] = g.num_vertices();
  j["degree"] = g.degree();
  j["half_loops"] = g.num_half_loops();
  std::vector<std::uint64_t> rot(g.num_darts());
  for (std::uint64_t d = 0; d < g.num_darts(); ++d) rot[d] = g.rot(d);
  j["rot"] = rot;
  return j.dump(2) + "\n";
}

std::string graph_to_json(const BipartiteGraph& g) {
  ordered_json j;
  j["kind"] = "bipartite";
  j["num_left"] = g.num_left();
  j["num_right"] = g.num_right();
  j["left_degree"] = g.left_degree();
  j["right_degree"] = g.right_degree();
  const std::uint64_t darts = g.num_left() * g.left_degree();
  std::vector<std::uint64_t> rot(darts);
  for (std::uint64_t d = 0; d < darts; ++d) rot[d] = g.rot_flat(d);
  j["rot"] = rot;
  return j.dump(2) + "\n";
}

AnyGraph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::io_error, std::string("graph json parse failure: ") + e.what());
  }
  const std::string kind = j.value("kind", "");
  if (kind == "rotation") {
    const auto n = j.value("num_vertices", std::uint64_t(0));
    const auto d = j.value("degree", std::uint32_t(0));
    const auto half = j.value("half_loops", std::uint64_t(0));
    return RotationGraph(n, d, rot_array(j, "rot"), half > 0);
  }
  if (kind == "bipartite") {
    const auto nl = j.value("num_left", std::uint64_t(0));
    const auto nr = j.value("num_right", std::uint64_t(0));
    const auto c = j.value("left_degree", std::uint32_t(0));
    const auto d = j.value("right_degree", std::uint32_t(0));
    return BipartiteGraph(nl, nr, c, d, rot_array(j, "rot"));
  }
  throw Error(Errc::io_error, "graph json kind must be 'rotation' or 'bipartite'");
}

void write_graph(const RotationGraph& g, const std::string& path) {
  write_text_file(path, graph_to_json(g));
}

void write_graph(const BipartiteGraph& g, const std::string& path) {
  write_text_file(path, graph_to_json(g));
}

AnyGraph read_graph(const std::string& path) { return graph_from_json(read_text_file(path)); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(Errc::io_error, "short write to '" + path + "'");
}

}  // namespace expander

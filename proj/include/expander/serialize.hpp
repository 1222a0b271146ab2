#pragma once

#include <string>
#include <variant>

#include "expander/rotation_graph.hpp"

namespace expander {

// JSON graph files: {"kind":"rotation",...} or {"kind":"bipartite",...} with
// the full rotation map as a flat dart array. Round trips are exact.
std::string graph_to_json(const RotationGraph& g);
std::string graph_to_json(const BipartiteGraph& g);

using AnyGraph = std::variant<RotationGraph, BipartiteGraph>;

AnyGraph graph_from_json(const std::string& text);

void write_graph(const RotationGraph& g, const std::string& path);
void write_graph(const BipartiteGraph& g, const std::string& path);
AnyGraph read_graph(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace expander

#pragma once

#include <string>

#include "pcs/dual_graph.hpp"

namespace pcs {

// Graph file format (JSON):
//   { "vertices": [ { "id": 1, "parents": [], "self_intersection": -1 }, ... ],
//     "marked_divisors": [3], "arrows": [ { "vertex": 3, "branch": 1 } ] }
// Self-intersections are optional on input; when present they must match the
// replay of the parent lists.
DualGraph parse_graph_json(const std::string& text);
std::string graph_to_json(const DualGraph& graph);

DualGraph read_graph_file(const std::string& path);

} // namespace pcs

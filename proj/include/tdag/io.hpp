#pragma once

#include <string>

#include "tdag/graph.hpp"

namespace tdag {

// Canonical JSON graph format:
// {"vertices":[ints], "edges":[{"id":int,"tail":int,"head":int}],
//  "source":int, "target":int}
DiGraph graph_from_json(const std::string& text);
std::string graph_to_json(const DiGraph& g);

// Deterministic DOT rendering: terminals double-circled, edge labels = ids.
std::string export_dot(const DiGraph& g);

}  // namespace tdag

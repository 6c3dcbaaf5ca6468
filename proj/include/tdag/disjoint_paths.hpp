#pragma once

#include <optional>
#include <vector>

#include "tdag/graph.hpp"

namespace tdag {

// Terminal pairs for a vertex-disjoint paths query. All endpoint vertices
// must be pairwise distinct, except that from == to is permitted within a
// pair (a zero-length path whose vertex is frozen).
struct PathQuery {
    std::vector<std::pair<VertexId, VertexId>> pairs;
};

struct DirPath {
    std::vector<VertexId> vertices;  // from ... to
    std::vector<EdgeId> edges;       // empty for a zero-length path
};

struct PathSolution {
    std::vector<DirPath> paths;  // in query order, pairwise vertex-disjoint
};

// Decides and constructs m pairwise vertex-disjoint directed paths in a DAG.
// Breadth-first search over m-tuples of pebble positions; the only legal move
// advances the pebble whose vertex is earliest in topological order among the
// unfinished pebbles, along one out-edge (ascending edge id), to a vertex
// distinct from all other pebble positions. Complete, deterministic.
// Throws CyclicInput on cyclic graphs, MalformedQuery on duplicate endpoints.
std::optional<PathSolution> vertex_disjoint_paths_dag(const DiGraph& g, const PathQuery& q);

// Diagnostics: number of pebble-position tuples memoized by the most recent
// vertex_disjoint_paths_dag call on this thread (bounded by |V|^m).
extern thread_local size_t vdp_last_state_count;

// Validates the query's endpoint-distinctness contract (shared by the oracle).
void check_path_query(const DiGraph& g, const PathQuery& q);

// Multi-demand wrapper that lifts the endpoint-distinctness restriction by
// port-splitting: every demand endpoint vertex is replaced by one in-copy per
// demanded path ending there (receiving all its in-edges) and one out-copy
// per demanded path starting there (keeping all its out-edges). A single
// solver call then yields paths that are pairwise disjoint everywhere except
// at shared demand endpoints, and that never pass through any endpoint
// vertex internally. Demands must have from != to. Paths are returned in
// demand order, translated back to the original graph.
std::optional<std::vector<DirPath>> route_vertex_disjoint(
    const DiGraph& g, const std::vector<std::pair<VertexId, VertexId>>& demands);

}  // namespace tdag

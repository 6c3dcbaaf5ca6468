#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tdag/disjoint_paths.hpp"
#include "tdag/graph.hpp"
#include "tdag/ops.hpp"

namespace tdag {

struct Hub {
    VertexId vertex;
    int indegree;
    int outdegree;
};

// All vertices with indegree > 1 and outdegree > 1.
std::vector<Hub> hubs(const DiGraph& g);

// A graph derivable from the pattern by split operations on hub vertices,
// with the split steps recorded (contracting them recovers the pattern).
struct Expansion {
    DiGraph graph;
    std::vector<EmbedOp> provenance;  // splits applied to the pattern, in order
};

// Every graph obtainable from the pattern by split operations that move at
// least two edges (moving a single edge is a subdivision, which homeomorphism
// search already covers), bounded by the given size so the closure is finite,
// deduplicated by terminal-preserving isomorphism. The unsplit pattern is
// first. Splitting is not restricted to hub vertices: reaching e.g. a
// two-vertex multigraph inside a host with no wide junction requires
// splitting terminals, which are never hubs.
std::vector<Expansion> hub_expansions(const DiGraph& pattern, size_t max_vertices, size_t max_edges);

// Certificate of a terminal-anchored subgraph homeomorphism.
struct PatternMatch {
    VertexMap vertex_map;                 // pattern vertex -> host vertex
    std::map<EdgeId, DirPath> edge_paths;  // per pattern edge, a host path
    DirPath source_path;                  // host source -> image(pattern source)
    DirPath target_path;                  // image(pattern target) -> host target
};

// Subgraph homeomorphism with terminal anchoring: an injective vertex map
// plus internally-vertex-disjoint host paths for every pattern edge, and
// disjoint host-source -> image(source), image(target) -> host-target paths.
std::optional<PatternMatch> is_h_embedded(const Tdag& pattern, const Tdag& host);

struct DMatch {
    Expansion expansion;  // the hub expansion that matched
    PatternMatch match;
};

// Pattern is d-embedded in host iff host is a TDAG and some hub expansion of
// the pattern is h-embedded in it. Cyclic hosts yield nullopt; hosts that are
// acyclic but not 2-terminal raise HostNotTwoTerminal.
std::optional<DMatch> is_d_embedded(const Tdag& pattern, const DiGraph& host);

// For TDAGs, d-minor and d-embedding coincide.
std::optional<DMatch> is_d_minor(const Tdag& pattern, const Tdag& host);

// Converts an embedding certificate into a replayable minor-operation
// sequence from the host down to (a graph isomorphic to) the pattern.
OpSequence minor_witness_from_match(const Tdag& pattern, const Tdag& host, const DMatch& m);

// Re-validates a certificate independently of the search (injectivity,
// routing, pairwise internal disjointness).
bool check_pattern_match(const Tdag& pattern, const Tdag& host, const PatternMatch& m);

// Shared helper: a d-minor op sequence reducing `host` to (an isomorphic copy
// of) the subgraph spanned by `keep_edges`, which must be a valid 2-terminal
// subgraph containing both terminals. Returns the ops, the resulting graph,
// and the map original-vertex -> surviving representative.
struct SubgraphReduction {
    std::vector<AnyOp> ops;
    DiGraph result;
    std::map<VertexId, VertexId> rep;
};
SubgraphReduction reduce_to_edge_subgraph(const DiGraph& host, const std::set<EdgeId>& keep_edges);

}  // namespace tdag

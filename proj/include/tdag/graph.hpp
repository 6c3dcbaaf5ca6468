#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdag {

using VertexId = int;
using EdgeId = int;

enum class ErrKind {
    BadInput,
    CycleFound,
    MultipleSources,
    MultipleSinks,
    TerminalMismatch,
    BudgetExhausted,
    PreconditionViolated,
    EdgeNotFound,
    VertexNotFound,
    InvalidK,
    TooLarge,
    CyclicInput,
    MalformedQuery,
    NotInvertibleOutsideTdag,
    HostNotTwoTerminal,
    EngineDisagreement,
};

struct GraphError : std::runtime_error {
    ErrKind kind;
    std::vector<int> witness;  // cycle edge ids, offending vertex ids, ...

    GraphError(ErrKind k, const std::string& msg, std::vector<int> w = {})
        : std::runtime_error(msg), kind(k), witness(std::move(w)) {}
};

struct Edge {
    EdgeId id;
    VertexId tail;
    VertexId head;

    bool operator==(const Edge&) const = default;
};

// Directed multigraph with identity-bearing edges and designated terminals.
// No self-loops; parallel edges permitted.
struct DiGraph {
    std::set<VertexId> vertices;
    std::vector<Edge> edges;
    VertexId source = 0;
    VertexId target = 0;

    bool has_vertex(VertexId v) const { return vertices.count(v) > 0; }

    const Edge* find_edge(EdgeId id) const {
        for (const auto& e : edges)
            if (e.id == id) return &e;
        return nullptr;
    }

    const Edge& edge(EdgeId id) const {
        const Edge* e = find_edge(id);
        if (!e) throw GraphError(ErrKind::EdgeNotFound, "no edge with id " + std::to_string(id), {id});
        return *e;
    }

    std::vector<Edge> out_edges(VertexId v) const {
        std::vector<Edge> r;
        for (const auto& e : edges)
            if (e.tail == v) r.push_back(e);
        return r;
    }

    std::vector<Edge> in_edges(VertexId v) const {
        std::vector<Edge> r;
        for (const auto& e : edges)
            if (e.head == v) r.push_back(e);
        return r;
    }

    int outdeg(VertexId v) const {
        int d = 0;
        for (const auto& e : edges) d += (e.tail == v);
        return d;
    }

    int indeg(VertexId v) const {
        int d = 0;
        for (const auto& e : edges) d += (e.head == v);
        return d;
    }

    VertexId fresh_vertex_id() const {
        return vertices.empty() ? 0 : *vertices.rbegin() + 1;
    }

    EdgeId fresh_edge_id() const {
        EdgeId m = -1;
        for (const auto& e : edges) m = std::max(m, e.id);
        return m + 1;
    }

    bool operator==(const DiGraph&) const = default;
};

// A DiGraph validated as a 2-terminal DAG, with a cached topological order.
struct Tdag {
    DiGraph g;
    std::vector<VertexId> topo_order;
};

// Terminal-preserving vertex bijection between two graphs.
struct VertexMap {
    std::map<VertexId, VertexId> pairs;
};

// Throws GraphError(BadInput) unless vertices/edges/terminals are consistent
// (endpoints exist, ids unique, no self-loops, terminals present).
void check_well_formed(const DiGraph& g);

// Deterministic topological order (ties by ascending VertexId).
// Throws CycleFound with a directed cycle (edge ids) as witness.
std::vector<VertexId> topological_order(const DiGraph& g);

// Succeeds iff g is acyclic with a unique source (= declared source) and a
// unique sink (= declared target). The single-vertex graph is admitted.
Tdag validate_tdag(const DiGraph& g);

// True iff a directed u-v walk exists; u == v counts (zero-length path).
bool has_path(const DiGraph& g, VertexId u, VertexId v);

// Budgeted exhaustive check that every edge (and vertex) of a possibly-cyclic
// graph lies on a simple source-target path: for each edge (u,v), searches for
// vertex-disjoint simple s-u and v-t paths by backtracking.
// Throws BudgetExhausted when the step budget runs out.
bool validate_two_terminal_general(const DiGraph& g, long long budget);

// Terminal-preserving isomorphism (source->source, target->target, edge
// multiplicities per ordered vertex pair preserved), or nullopt.
std::optional<VertexMap> is_isomorphic(const DiGraph& g1, const DiGraph& g2);

// Vertices of g reachable from u (u included).
std::set<VertexId> reachable_from(const DiGraph& g, VertexId u);

// Vertices of g that reach v (v included).
std::set<VertexId> reaching_to(const DiGraph& g, VertexId v);

// Canonical string encoding, minimal over all terminal-preserving
// permutations; equal strings iff is_isomorphic succeeds.
std::string canonical_form(const DiGraph& g);

}  // namespace tdag

#include "tdag/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

namespace tdag {

void check_well_formed(const DiGraph& g) {
    if (!g.has_vertex(g.source) || !g.has_vertex(g.target))
        throw GraphError(ErrKind::BadInput, "declared terminals are not vertices of the graph");
    std::set<EdgeId> ids;
    for (const auto& e : g.edges) {
        if (e.tail == e.head)
            throw GraphError(ErrKind::BadInput, "self-loop on vertex " + std::to_string(e.tail), {e.tail});
        if (!g.has_vertex(e.tail) || !g.has_vertex(e.head))
            throw GraphError(ErrKind::BadInput, "edge " + std::to_string(e.id) + " has a missing endpoint", {e.id});
        if (!ids.insert(e.id).second)
            throw GraphError(ErrKind::BadInput, "duplicate edge id " + std::to_string(e.id), {e.id});
    }
}

namespace {

// A directed cycle (as edge ids) in a graph known to contain one.
std::vector<EdgeId> find_cycle(const DiGraph& g) {
    std::map<VertexId, int> state;  // 0 unseen, 1 on stack, 2 done
    std::map<VertexId, Edge> via;   // edge used to enter the vertex
    std::vector<EdgeId> cycle;

    std::function<bool(VertexId)> dfs = [&](VertexId v) {
        state[v] = 1;
        for (const auto& e : g.out_edges(v)) {
            int st = state.count(e.head) ? state[e.head] : 0;
            if (st == 1) {
                // unwind from v back to e.head
                cycle.push_back(e.id);
                VertexId cur = v;
                while (cur != e.head) {
                    cycle.push_back(via[cur].id);
                    cur = via[cur].tail;
                }
                std::reverse(cycle.begin(), cycle.end());
                return true;
            }
            if (st == 0) {
                via[e.head] = e;
                if (dfs(e.head)) return true;
            }
        }
        state[v] = 2;
        return false;
    };

    for (VertexId v : g.vertices)
        if ((state.count(v) ? state[v] : 0) == 0 && dfs(v)) return cycle;
    return {};
}

}  // namespace

std::vector<VertexId> topological_order(const DiGraph& g) {
    check_well_formed(g);
    std::map<VertexId, int> indeg;
    for (VertexId v : g.vertices) indeg[v] = 0;
    for (const auto& e : g.edges) indeg[e.head]++;

    std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
    for (VertexId v : g.vertices)
        if (indeg[v] == 0) ready.push(v);

    std::vector<VertexId> order;
    while (!ready.empty()) {
        VertexId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (const auto& e : g.out_edges(v))
            if (--indeg[e.head] == 0) ready.push(e.head);
    }
    if (order.size() != g.vertices.size())
        throw GraphError(ErrKind::CycleFound, "graph contains a directed cycle", find_cycle(g));
    return order;
}

Tdag validate_tdag(const DiGraph& g) {
    std::vector<VertexId> order = topological_order(g);  // throws on cycle / malformed

    std::vector<int> sources, sinks;
    for (VertexId v : g.vertices) {
        if (g.indeg(v) == 0) sources.push_back(v);
        if (g.outdeg(v) == 0) sinks.push_back(v);
    }
    if (g.vertices.size() == 1) {
        if (g.source != g.target)
            throw GraphError(ErrKind::TerminalMismatch, "single-vertex graph must have source == target");
        return Tdag{g, order};
    }
    if (sources.size() != 1)
        throw GraphError(ErrKind::MultipleSources, "graph has " + std::to_string(sources.size()) + " sources", sources);
    if (sinks.size() != 1)
        throw GraphError(ErrKind::MultipleSinks, "graph has " + std::to_string(sinks.size()) + " sinks", sinks);
    if (sources[0] != g.source || sinks[0] != g.target)
        throw GraphError(ErrKind::TerminalMismatch, "declared terminals do not match the unique source/sink",
                         {sources[0], sinks[0]});
    return Tdag{g, order};
}

bool has_path(const DiGraph& g, VertexId u, VertexId v) {
    if (u == v) return true;
    std::set<VertexId> seen{u};
    std::queue<VertexId> q;
    q.push(u);
    while (!q.empty()) {
        VertexId x = q.front();
        q.pop();
        for (const auto& e : g.edges)
            if (e.tail == x && !seen.count(e.head)) {
                if (e.head == v) return true;
                seen.insert(e.head);
                q.push(e.head);
            }
    }
    return false;
}

std::set<VertexId> reachable_from(const DiGraph& g, VertexId u) {
    std::set<VertexId> seen{u};
    std::queue<VertexId> q;
    q.push(u);
    while (!q.empty()) {
        VertexId x = q.front();
        q.pop();
        for (const auto& e : g.edges)
            if (e.tail == x && seen.insert(e.head).second) q.push(e.head);
    }
    return seen;
}

std::set<VertexId> reaching_to(const DiGraph& g, VertexId v) {
    std::set<VertexId> seen{v};
    std::queue<VertexId> q;
    q.push(v);
    while (!q.empty()) {
        VertexId x = q.front();
        q.pop();
        for (const auto& e : g.edges)
            if (e.head == x && seen.insert(e.tail).second) q.push(e.tail);
    }
    return seen;
}

namespace {

void spend(long long& budget) {
    if (--budget < 0) throw GraphError(ErrKind::BudgetExhausted, "search budget exhausted");
}

// Is there a path from `from` to `to` avoiding `blocked` (endpoints must not
// be blocked themselves)?
bool path_avoiding(const DiGraph& g, VertexId from, VertexId to, const std::set<VertexId>& blocked,
                   long long& budget) {
    if (blocked.count(from) || blocked.count(to)) return false;
    if (from == to) return true;
    std::set<VertexId> seen{from};
    std::queue<VertexId> q;
    q.push(from);
    while (!q.empty()) {
        VertexId x = q.front();
        q.pop();
        spend(budget);
        for (const auto& e : g.edges)
            if (e.tail == x && !blocked.count(e.head) && seen.insert(e.head).second) {
                if (e.head == to) return true;
                q.push(e.head);
            }
    }
    return false;
}

// Backtracks over simple s-u paths (kept in `path` as a vertex set) looking
// for one that leaves a v-t path on the untouched vertices.
bool edge_on_st_path(const DiGraph& g, VertexId cur, VertexId u, VertexId v, std::set<VertexId>& path,
                     long long& budget) {
    spend(budget);
    if (cur == u) return path_avoiding(g, v, g.target, path, budget);
    for (const auto& e : g.out_edges(cur)) {
        if (e.head == v || path.count(e.head)) continue;
        path.insert(e.head);
        if (edge_on_st_path(g, e.head, u, v, path, budget)) {
            path.erase(e.head);
            return true;
        }
        path.erase(e.head);
    }
    return false;
}

}  // namespace

bool validate_two_terminal_general(const DiGraph& g, long long budget) {
    check_well_formed(g);
    if (g.vertices.size() == 1) return g.edges.empty();

    // Every vertex must touch some edge, or it cannot lie on any s-t path.
    for (VertexId v : g.vertices)
        if (g.indeg(v) == 0 && g.outdeg(v) == 0) return false;

    for (const auto& e : g.edges) {
        std::set<VertexId> path{g.source};
        if (e.head == g.source) return false;  // s-u path and v-t path cannot avoid each other
        if (!edge_on_st_path(g, g.source, e.tail, e.head, path, budget)) return false;
    }
    return true;
}

namespace {

struct IsoSearch {
    const DiGraph* g1;
    const DiGraph* g2;
    std::vector<VertexId> v1;  // assignment order
    std::map<VertexId, VertexId> fwd, bwd;
    // multiplicity of ordered pair (u,v)
    std::map<std::pair<VertexId, VertexId>, int> m1, m2;

    bool compatible(VertexId a, VertexId b) const {
        if (g1->indeg(a) != g2->indeg(b) || g1->outdeg(a) != g2->outdeg(b)) return false;
        // edges between already-mapped vertices must match in multiplicity
        for (const auto& [u, mu] : fwd) {
            auto f = [&](const std::map<std::pair<VertexId, VertexId>, int>& m, VertexId x, VertexId y) {
                auto it = m.find({x, y});
                return it == m.end() ? 0 : it->second;
            };
            if (f(m1, u, a) != f(m2, mu, b)) return false;
            if (f(m1, a, u) != f(m2, b, mu)) return false;
        }
        return true;
    }

    bool search(size_t i) {
        if (i == v1.size()) return true;
        VertexId a = v1[i];
        if (fwd.count(a)) return search(i + 1);
        for (VertexId b : g2->vertices) {
            if (bwd.count(b) || !compatible(a, b)) continue;
            fwd[a] = b;
            bwd[b] = a;
            if (search(i + 1)) return true;
            fwd.erase(a);
            bwd.erase(b);
        }
        return false;
    }
};

}  // namespace

std::optional<VertexMap> is_isomorphic(const DiGraph& g1, const DiGraph& g2) {
    if (g1.vertices.size() != g2.vertices.size() || g1.edges.size() != g2.edges.size()) return std::nullopt;

    IsoSearch s;
    s.g1 = &g1;
    s.g2 = &g2;
    for (const auto& e : g1.edges) s.m1[{e.tail, e.head}]++;
    for (const auto& e : g2.edges) s.m2[{e.tail, e.head}]++;

    // terminals are pinned
    if (g1.indeg(g1.source) != g2.indeg(g2.source) || g1.outdeg(g1.source) != g2.outdeg(g2.source))
        return std::nullopt;
    s.fwd[g1.source] = g2.source;
    s.bwd[g2.source] = g1.source;
    if (g1.source != g1.target) {
        if (g2.source == g2.target) return std::nullopt;
        if (!s.compatible(g1.target, g2.target)) return std::nullopt;
        s.fwd[g1.target] = g2.target;
        s.bwd[g2.target] = g1.target;
    } else if (g2.source != g2.target) {
        return std::nullopt;
    }

    s.v1.assign(g1.vertices.begin(), g1.vertices.end());
    if (!s.search(0)) return std::nullopt;

    // final multiplicity check (redundant with incremental checks, cheap)
    std::map<std::pair<VertexId, VertexId>, int> mapped;
    for (const auto& e : g1.edges) mapped[{s.fwd[e.tail], s.fwd[e.head]}]++;
    if (mapped != s.m2) return std::nullopt;

    VertexMap vm;
    vm.pairs = s.fwd;
    return vm;
}

std::string canonical_form(const DiGraph& g) {
    // Minimal adjacency encoding over terminal-preserving permutations.
    std::vector<VertexId> rest;
    for (VertexId v : g.vertices)
        if (v != g.source && v != g.target) rest.push_back(v);

    std::vector<VertexId> base;
    base.push_back(g.source);
    if (g.target != g.source) base.push_back(g.target);

    auto encode = [&](const std::vector<VertexId>& order) {
        std::map<VertexId, int> pos;
        for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = (int)i;
        std::vector<std::pair<int, int>> adj;
        adj.reserve(g.edges.size());
        for (const auto& e : g.edges) adj.push_back({pos[e.tail], pos[e.head]});
        std::sort(adj.begin(), adj.end());
        std::ostringstream os;
        os << order.size() << ';';
        for (auto& [a, b] : adj) os << a << '>' << b << ',';
        return os.str();
    };

    std::sort(rest.begin(), rest.end());
    std::string best;
    do {
        std::vector<VertexId> order = base;
        order.insert(order.end(), rest.begin(), rest.end());
        std::string enc = encode(order);
        if (best.empty() || enc < best) best = enc;
    } while (std::next_permutation(rest.begin(), rest.end()));
    if (best.empty()) best = encode(base);
    return best;
}

}  // namespace tdag

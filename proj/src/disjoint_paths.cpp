#include "tdag/disjoint_paths.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace tdag {

thread_local size_t vdp_last_state_count = 0;

void check_path_query(const DiGraph& g, const PathQuery& q) {
    std::vector<VertexId> seen;
    auto add = [&](VertexId v) {
        if (!g.has_vertex(v))
            throw GraphError(ErrKind::MalformedQuery, "query endpoint " + std::to_string(v) + " is not a vertex", {v});
        if (std::find(seen.begin(), seen.end(), v) != seen.end())
            throw GraphError(ErrKind::MalformedQuery, "duplicate query endpoint " + std::to_string(v), {v});
        seen.push_back(v);
    };
    for (const auto& [from, to] : q.pairs) {
        add(from);
        if (to != from) add(to);
    }
}

std::optional<PathSolution> vertex_disjoint_paths_dag(const DiGraph& g, const PathQuery& q) {
    std::map<VertexId, int> topo_pos;
    try {
        std::vector<VertexId> order = topological_order(g);
        for (size_t i = 0; i < order.size(); ++i) topo_pos[order[i]] = (int)i;
    } catch (const GraphError& e) {
        if (e.kind == ErrKind::CycleFound)
            throw GraphError(ErrKind::CyclicInput, "disjoint-path search requires an acyclic graph", e.witness);
        throw;
    }
    check_path_query(g, q);

    const size_t m = q.pairs.size();
    std::vector<VertexId> start, goal;
    for (const auto& [f, t] : q.pairs) {
        start.push_back(f);
        goal.push_back(t);
    }
    if (m == 0) {
        vdp_last_state_count = 0;
        return PathSolution{};
    }

    // per-pebble goal reachability, used to discard dead states early
    std::map<VertexId, std::set<VertexId>> reach;
    for (VertexId v : g.vertices) reach[v] = reachable_from(g, v);

    struct Parent {
        std::vector<VertexId> prev;
        int pebble;
        EdgeId edge;
    };
    std::map<std::vector<VertexId>, Parent> parent;
    std::queue<std::vector<VertexId>> bfs;
    parent[start] = {{}, -1, -1};
    bfs.push(start);

    std::optional<std::vector<VertexId>> accept;
    while (!bfs.empty() && !accept) {
        std::vector<VertexId> st = bfs.front();
        bfs.pop();
        // the pebble to move: earliest in topological order among unfinished
        int mover = -1;
        for (size_t i = 0; i < m; ++i) {
            if (st[i] == goal[i]) continue;
            if (mover < 0 || topo_pos[st[i]] < topo_pos[st[mover]]) mover = (int)i;
        }
        if (mover < 0) {
            accept = st;  // start state already accepting
            break;
        }
        std::vector<Edge> outs = g.out_edges(st[mover]);
        std::sort(outs.begin(), outs.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
        for (const auto& e : outs) {
            bool occupied = false;
            for (size_t i = 0; i < m; ++i)
                if ((int)i != mover && st[i] == e.head) occupied = true;
            if (occupied) continue;
            std::vector<VertexId> nxt = st;
            nxt[mover] = e.head;
            if (parent.count(nxt)) continue;
            if (!reach[e.head].count(goal[mover])) continue;  // dead move
            parent[nxt] = {st, mover, e.id};
            bool done = true;
            for (size_t i = 0; i < m; ++i) done = done && nxt[i] == goal[i];
            if (done) {
                accept = nxt;
                break;
            }
            bfs.push(nxt);
        }
    }
    vdp_last_state_count = parent.size();
    if (!accept) return std::nullopt;

    PathSolution sol;
    sol.paths.resize(m);
    for (size_t i = 0; i < m; ++i) sol.paths[i].vertices.push_back(start[i]);
    // replay moves forward to build the paths in order
    std::vector<std::pair<int, EdgeId>> moves;
    std::vector<VertexId> cur = *accept;
    while (parent[cur].pebble >= 0) {
        moves.push_back({parent[cur].pebble, parent[cur].edge});
        cur = parent[cur].prev;
    }
    std::reverse(moves.begin(), moves.end());
    for (const auto& [peb, eid] : moves) {
        const Edge& e = g.edge(eid);
        sol.paths[peb].vertices.push_back(e.head);
        sol.paths[peb].edges.push_back(eid);
    }
    return sol;
}

std::optional<std::vector<DirPath>> route_vertex_disjoint(
    const DiGraph& g, const std::vector<std::pair<VertexId, VertexId>>& demands) {
    for (const auto& [f, t] : demands)
        if (f == t)
            throw GraphError(ErrKind::MalformedQuery, "route_vertex_disjoint demands must have distinct endpoints",
                             {f});

    DiGraph aux;
    std::map<VertexId, VertexId> vertex_orig;  // aux vertex -> original vertex
    std::map<EdgeId, EdgeId> edge_orig;        // aux edge -> original edge
    std::set<VertexId> split;
    for (const auto& [f, t] : demands) {
        split.insert(f);
        split.insert(t);
    }
    int next_v = 0;
    std::map<VertexId, VertexId> plain;
    std::map<std::pair<VertexId, int>, VertexId> in_port, out_port;
    for (VertexId w : g.vertices) {
        if (split.count(w)) continue;
        plain[w] = next_v;
        vertex_orig[next_v] = w;
        aux.vertices.insert(next_v++);
    }
    for (size_t i = 0; i < demands.size(); ++i) {
        out_port[{demands[i].first, (int)i}] = next_v;
        vertex_orig[next_v] = demands[i].first;
        aux.vertices.insert(next_v++);
        in_port[{demands[i].second, (int)i}] = next_v;
        vertex_orig[next_v] = demands[i].second;
        aux.vertices.insert(next_v++);
    }
    int next_e = 0;
    std::vector<Edge> es = g.edges;
    std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (const auto& e : es) {
        std::vector<VertexId> tails, heads;
        if (split.count(e.tail)) {
            for (size_t i = 0; i < demands.size(); ++i)
                if (demands[i].first == e.tail) tails.push_back(out_port[{e.tail, (int)i}]);
        } else {
            tails.push_back(plain[e.tail]);
        }
        if (split.count(e.head)) {
            for (size_t i = 0; i < demands.size(); ++i)
                if (demands[i].second == e.head) heads.push_back(in_port[{e.head, (int)i}]);
        } else {
            heads.push_back(plain[e.head]);
        }
        for (VertexId x : tails)
            for (VertexId y : heads) {
                aux.edges.push_back({next_e, x, y});
                edge_orig[next_e++] = e.id;
            }
    }
    // terminals are irrelevant for the solver; keep the value well-formed
    if (!aux.vertices.empty()) aux.source = aux.target = *aux.vertices.begin();

    PathQuery q;
    for (size_t i = 0; i < demands.size(); ++i)
        q.pairs.push_back({out_port[{demands[i].first, (int)i}], in_port[{demands[i].second, (int)i}]});
    auto sol = vertex_disjoint_paths_dag(aux, q);
    if (!sol) return std::nullopt;
    std::vector<DirPath> out;
    for (const auto& p : sol->paths) {
        DirPath hp;
        for (VertexId v : p.vertices) hp.vertices.push_back(vertex_orig[v]);
        for (EdgeId e : p.edges) hp.edges.push_back(edge_orig[e]);
        out.push_back(hp);
    }
    return out;
}

}  // namespace tdag

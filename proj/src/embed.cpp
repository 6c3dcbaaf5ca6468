#include "tdag/embed.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>

namespace tdag {

std::vector<Hub> hubs(const DiGraph& g) {
    std::vector<Hub> out;
    for (VertexId v : g.vertices) {
        int i = g.indeg(v), o = g.outdeg(v);
        if (i > 1 && o > 1) out.push_back({v, i, o});
    }
    return out;
}

std::vector<Expansion> hub_expansions(const DiGraph& pattern, size_t max_vertices, size_t max_edges) {
    std::vector<Expansion> out;
    std::set<std::string> seen;
    std::queue<Expansion> q;

    Expansion root{pattern, {}};
    seen.insert(canonical_form(pattern));
    out.push_back(root);
    q.push(root);

    while (!q.empty()) {
        Expansion cur = q.front();
        q.pop();
        if (cur.graph.vertices.size() + 1 > max_vertices || cur.graph.edges.size() + 1 > max_edges)
            continue;  // a further split would exceed the host budget
        for (VertexId v : cur.graph.vertices) {
            // splits moving a single edge are subdivisions and are already
            // covered by homeomorphism search; the size bound keeps the
            // closure finite
            for (int dir = 0; dir < 2; ++dir) {
                if (dir == 0 && v == cur.graph.target) continue;
                if (dir == 1 && v == cur.graph.source) continue;
                std::vector<Edge> cand = dir == 0 ? cur.graph.out_edges(v) : cur.graph.in_edges(v);
                std::sort(cand.begin(), cand.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
                const size_t n = cand.size();
                for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
                    if (std::popcount(mask) < 2) continue;
                    EmbedOp op;
                    op.kind = dir == 0 ? EmbedOp::ForwardSplit : EmbedOp::BackwardSplit;
                    op.vertex = v;
                    for (size_t i = 0; i < n; ++i)
                        if (mask & (size_t{1} << i)) op.moved.push_back(cand[i].id);
                    op.new_vertex = cur.graph.fresh_vertex_id();
                    op.new_edge = cur.graph.fresh_edge_id();
                    DiGraph nxt = apply_embed_op(cur.graph, op);
                    if (!seen.insert(canonical_form(nxt)).second) continue;
                    Expansion e{nxt, cur.provenance};
                    e.provenance.push_back(op);
                    out.push_back(e);
                    q.push(e);
                }
            }
        }
    }
    return out;
}

namespace {

struct HomeoSearch {
    const Tdag* pat;
    const Tdag* host;
    std::map<VertexId, std::set<VertexId>> reach_p, reach_h;  // reachability closures
    std::map<VertexId, VertexId> phi;
    std::set<VertexId> used;
    std::optional<PatternMatch> found;

    bool feasible(VertexId v, VertexId w) const {
        const DiGraph& P = pat->g;
        const DiGraph& H = host->g;
        int din = P.indeg(v) + (v == P.source && w != H.source ? 1 : 0);
        int dout = P.outdeg(v) + (v == P.target && w != H.target ? 1 : 0);
        if (H.indeg(w) < din || H.outdeg(w) < dout) return false;
        if (v == P.source && !reach_h.at(H.source).count(w)) return false;
        if (v == P.target && !reach_h.at(w).count(H.target)) return false;
        for (const auto& [u, x] : phi) {
            if (reach_p.at(u).count(v) && !reach_h.at(x).count(w)) return false;
            if (reach_p.at(v).count(u) && !reach_h.at(w).count(x)) return false;
        }
        return true;
    }

    void attempt_routing() {
        const DiGraph& P = pat->g;
        const DiGraph& H = host->g;
        std::vector<std::pair<VertexId, VertexId>> demands;
        std::vector<Edge> pes = P.edges;
        std::sort(pes.begin(), pes.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
        for (const auto& e : pes) demands.push_back({phi[e.tail], phi[e.head]});
        int src_demand = -1, tgt_demand = -1;
        if (phi[P.source] != H.source) {
            src_demand = (int)demands.size();
            demands.push_back({H.source, phi[P.source]});
        }
        if (phi[P.target] != H.target) {
            tgt_demand = (int)demands.size();
            demands.push_back({phi[P.target], H.target});
        }
        auto paths = route_vertex_disjoint(H, demands);
        if (!paths) return;
        PatternMatch m;
        m.vertex_map.pairs = phi;
        for (size_t i = 0; i < pes.size(); ++i) m.edge_paths[pes[i].id] = (*paths)[i];
        if (src_demand >= 0)
            m.source_path = (*paths)[src_demand];
        else
            m.source_path.vertices = {H.source};
        if (tgt_demand >= 0)
            m.target_path = (*paths)[tgt_demand];
        else
            m.target_path.vertices = {H.target};
        found = m;
    }

    void search(const std::vector<VertexId>& order, size_t i) {
        if (found) return;
        if (i == order.size()) {
            attempt_routing();
            return;
        }
        VertexId v = order[i];
        for (VertexId w : host->g.vertices) {
            if (used.count(w) || !feasible(v, w)) continue;
            phi[v] = w;
            used.insert(w);
            search(order, i + 1);
            phi.erase(v);
            used.erase(w);
            if (found) return;
        }
    }
};

}  // namespace

std::optional<PatternMatch> is_h_embedded(const Tdag& pattern, const Tdag& host) {
    const DiGraph& P = pattern.g;
    const DiGraph& H = host.g;
    if (P.vertices.size() > H.vertices.size() || P.edges.size() > H.edges.size()) return std::nullopt;

    HomeoSearch s;
    s.pat = &pattern;
    s.host = &host;
    for (VertexId v : P.vertices) s.reach_p[v] = reachable_from(P, v);
    for (VertexId v : H.vertices) s.reach_h[v] = reachable_from(H, v);
    s.search(pattern.topo_order, 0);
    if (s.found && !check_pattern_match(pattern, host, *s.found))
        throw GraphError(ErrKind::EngineDisagreement, "internal error: embedding certificate failed re-validation");
    return s.found;
}

std::optional<DMatch> is_d_embedded(const Tdag& pattern, const DiGraph& host) {
    Tdag host_t;
    try {
        host_t = validate_tdag(host);
    } catch (const GraphError& e) {
        if (e.kind == ErrKind::CycleFound) return std::nullopt;  // closure: nothing embeds into a cyclic graph
        throw GraphError(ErrKind::HostNotTwoTerminal, std::string("host is not a 2-terminal DAG: ") + e.what());
    }
    for (const Expansion& ex : hub_expansions(pattern.g, host.vertices.size(), host.edges.size())) {
        Tdag ext = validate_tdag(ex.graph);
        if (auto m = is_h_embedded(ext, host_t)) return DMatch{ex, *m};
    }
    return std::nullopt;
}

std::optional<DMatch> is_d_minor(const Tdag& pattern, const Tdag& host) {
    return is_d_embedded(pattern, host.g);
}

bool check_pattern_match(const Tdag& pattern, const Tdag& host, const PatternMatch& m) {
    const DiGraph& P = pattern.g;
    const DiGraph& H = host.g;
    // injective map covering all pattern vertices
    std::set<VertexId> images;
    for (VertexId v : P.vertices) {
        auto it = m.vertex_map.pairs.find(v);
        if (it == m.vertex_map.pairs.end()) return false;
        if (!H.has_vertex(it->second)) return false;
        if (!images.insert(it->second).second) return false;
    }
    auto path_ok = [&](const DirPath& p, VertexId from, VertexId to) {
        if (p.vertices.empty() || p.vertices.front() != from || p.vertices.back() != to) return false;
        if (p.edges.size() + 1 != p.vertices.size()) return false;
        for (size_t i = 0; i < p.edges.size(); ++i) {
            const Edge* e = H.find_edge(p.edges[i]);
            if (!e || e->tail != p.vertices[i] || e->head != p.vertices[i + 1]) return false;
        }
        return true;
    };
    std::vector<const DirPath*> all;
    for (const auto& e : P.edges) {
        auto it = m.edge_paths.find(e.id);
        if (it == m.edge_paths.end()) return false;
        if (!path_ok(it->second, m.vertex_map.pairs.at(e.tail), m.vertex_map.pairs.at(e.head))) return false;
        all.push_back(&it->second);
    }
    if (!path_ok(m.source_path, H.source, m.vertex_map.pairs.at(P.source))) return false;
    if (!path_ok(m.target_path, m.vertex_map.pairs.at(P.target), H.target)) return false;
    all.push_back(&m.source_path);
    all.push_back(&m.target_path);
    // internal vertices: used at most once, never an image vertex
    std::map<VertexId, int> use_count;
    for (const DirPath* p : all)
        for (size_t i = 1; i + 1 < p->vertices.size(); ++i) {
            if (images.count(p->vertices[i])) return false;
            if (++use_count[p->vertices[i]] > 1) return false;
        }
    // internal vertices must also avoid the endpoints of other paths
    for (const DirPath* p : all)
        for (size_t i = 1; i + 1 < p->vertices.size(); ++i)
            for (const DirPath* q : all)
                if (q != p && (q->vertices.front() == p->vertices[i] || q->vertices.back() == p->vertices[i]))
                    return false;
    return true;
}

SubgraphReduction reduce_to_edge_subgraph(const DiGraph& host, const std::set<EdgeId>& keep_edges) {
    SubgraphReduction red;
    red.result = host;
    for (VertexId v : host.vertices) red.rep[v] = v;

    auto merge = [&](VertexId survivor, VertexId gone) {
        for (auto& [orig, r] : red.rep)
            if (r == gone) r = survivor;
    };

    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<Edge> es = red.result.edges;
        std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
        for (const auto& e : es) {
            if (keep_edges.count(e.id)) continue;
            const DiGraph& g = red.result;
            MinorOp op;
            if (g.outdeg(e.tail) >= 2 && g.indeg(e.head) >= 2)
                op = {MinorOp::Delete, e.id};
            else if (g.indeg(e.head) == 1)
                op = {MinorOp::BackwardContract, e.id};
            else
                op = {MinorOp::ForwardContract, e.id};
            red.result = apply_minor_op(g, op);
            if (op.kind != MinorOp::Delete) merge(e.tail, e.head);
            red.ops.push_back(op);
            progress = true;
            break;
        }
    }
    for (const auto& e : red.result.edges)
        if (!keep_edges.count(e.id))
            throw GraphError(ErrKind::PreconditionViolated, "subgraph reduction failed to remove all extra edges");
    return red;
}

OpSequence minor_witness_from_match(const Tdag& pattern, const Tdag& host, const DMatch& dm) {
    const PatternMatch& m = dm.match;
    std::set<EdgeId> keep;
    for (const auto& [pe, path] : m.edge_paths)
        for (EdgeId e : path.edges) keep.insert(e);
    for (EdgeId e : m.source_path.edges) keep.insert(e);
    for (EdgeId e : m.target_path.edges) keep.insert(e);

    SubgraphReduction red = reduce_to_edge_subgraph(host.g, keep);
    std::vector<AnyOp> ops = red.ops;
    DiGraph cur = red.result;

    auto apply = [&](MinorOp op) {
        const Edge e = cur.edge(op.edge);
        cur = apply_minor_op(cur, op);
        if (op.kind != MinorOp::Delete)
            for (auto& [orig, r] : red.rep)
                if (r == e.head) r = e.tail;
        ops.push_back(op);
    };

    // collapse the terminal-extension chains into the terminal images
    for (EdgeId e : m.source_path.edges) apply({MinorOp::ForwardContract, e});
    for (EdgeId e : m.target_path.edges) apply({MinorOp::BackwardContract, e});

    // collapse each expansion-edge path to a single edge; remember which host
    // edge survives for each expansion edge
    std::map<EdgeId, EdgeId> surviving;  // expansion edge id -> host edge id
    std::vector<EdgeId> pe_ids;
    for (const auto& [pe, path] : m.edge_paths) pe_ids.push_back(pe);
    std::sort(pe_ids.begin(), pe_ids.end());
    for (EdgeId pe : pe_ids) {
        const DirPath& path = m.edge_paths.at(pe);
        for (size_t i = 0; i + 1 < path.edges.size(); ++i) apply({MinorOp::BackwardContract, path.edges[i]});
        surviving[pe] = path.edges.back();
    }

    // undo the hub splits that produced the expansion, newest first
    for (auto it = dm.expansion.provenance.rbegin(); it != dm.expansion.provenance.rend(); ++it) {
        EdgeId hid = surviving.at(it->new_edge);
        apply({it->kind == EmbedOp::ForwardSplit ? MinorOp::BackwardContract : MinorOp::ForwardContract, hid});
    }

    OpSequence w;
    w.start = host.g;
    w.ops = ops;
    w.claimed_result = pattern.g;
    return w;
}

}  // namespace tdag

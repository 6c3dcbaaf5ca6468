#include "tdag/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

namespace tdag {

namespace {

void guard_edges(const DiGraph& g, size_t max_edges) {
    if (g.edges.size() > max_edges)
        throw GraphError(ErrKind::TooLarge,
                         "oracle guard: graph has " + std::to_string(g.edges.size()) + " edges, limit " +
                             std::to_string(max_edges));
}

bool subset_is_cut(const DiGraph& g, const std::set<EdgeId>& c) {
    // does removing c disconnect source from target?
    std::set<VertexId> seen{g.source};
    std::queue<VertexId> q;
    q.push(g.source);
    while (!q.empty()) {
        VertexId x = q.front();
        q.pop();
        if (x == g.target) return false;
        for (const auto& e : g.edges)
            if (e.tail == x && !c.count(e.id) && seen.insert(e.head).second) q.push(e.head);
    }
    return !seen.count(g.target);
}

}  // namespace

EnumerationReport oracle_enumerate(const DiGraph& g) {
    check_well_formed(g);
    guard_edges(g, 20);
    EnumerationReport rep;

    // simple s-t paths by DFS backtracking, edges in ascending id order
    DirPath cur;
    cur.vertices.push_back(g.source);
    std::set<VertexId> on_path{g.source};
    std::function<void(VertexId)> dfs = [&](VertexId v) {
        if (v == g.target) {
            rep.st_paths.push_back(cur);
            return;
        }
        std::vector<Edge> outs = g.out_edges(v);
        std::sort(outs.begin(), outs.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
        for (const auto& e : outs) {
            if (on_path.count(e.head)) continue;
            on_path.insert(e.head);
            cur.vertices.push_back(e.head);
            cur.edges.push_back(e.id);
            dfs(e.head);
            on_path.erase(e.head);
            cur.vertices.pop_back();
            cur.edges.pop_back();
        }
    };
    if (g.source == g.target && g.vertices.size() == 1) {
        // degenerate single-vertex graph: one zero-length path, no cuts
        rep.st_paths.push_back(cur);
        return rep;
    }
    dfs(g.source);

    const size_t m = g.edges.size();
    std::vector<EdgeId> ids;
    for (const auto& e : g.edges) ids.push_back(e.id);
    std::sort(ids.begin(), ids.end());
    for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
        std::set<EdgeId> c;
        for (size_t i = 0; i < m; ++i)
            if (mask & (size_t{1} << i)) c.insert(ids[i]);
        if (!subset_is_cut(g, c)) continue;
        bool minimal = true;
        for (EdgeId e : c) {
            std::set<EdgeId> c2 = c;
            c2.erase(e);
            if (subset_is_cut(g, c2)) {
                minimal = false;
                break;
            }
        }
        if (minimal) rep.minimal_cuts.push_back(c);
    }
    return rep;
}

bool oracle_is_parallel(const DiGraph& g, const std::set<EdgeId>& S) {
    EnumerationReport rep = oracle_enumerate(g);
    for (const auto& c : rep.minimal_cuts)
        if (std::includes(c.begin(), c.end(), S.begin(), S.end())) return true;
    return false;
}

bool oracle_is_concurrent(const DiGraph& g, const std::set<EdgeId>& S) {
    EnumerationReport rep = oracle_enumerate(g);
    for (EdgeId e : S) {
        bool ok = false;
        for (const auto& p : rep.st_paths) {
            std::set<EdgeId> pe(p.edges.begin(), p.edges.end());
            if (!pe.count(e)) continue;
            bool clean = true;
            for (EdgeId f : S)
                if (f != e && pe.count(f)) clean = false;
            if (clean) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

bool oracle_is_serial(const DiGraph& g, const std::set<EdgeId>& S) {
    EnumerationReport rep = oracle_enumerate(g);
    for (const auto& p : rep.st_paths) {
        std::set<EdgeId> pe(p.edges.begin(), p.edges.end());
        if (std::includes(pe.begin(), pe.end(), S.begin(), S.end())) return true;
    }
    return false;
}

WidthReport oracle_width(const DiGraph& g) {
    EnumerationReport rep = oracle_enumerate(g);
    WidthReport w;
    for (const auto& c : rep.minimal_cuts) w.pw = std::max(w.pw, (int)c.size());
    for (const auto& p : rep.st_paths) {
        w.max_serial = std::max(w.max_serial, (int)p.edges.size());
        std::set<EdgeId> pe(p.edges.begin(), p.edges.end());
        for (const auto& c : rep.minimal_cuts) {
            int inter = 0;
            for (EdgeId e : pe) inter += c.count(e);
            w.spw = std::max(w.spw, inter);
        }
    }
    // largest concurrent set by subset scan over edge subsets
    std::vector<EdgeId> ids;
    for (const auto& e : g.edges) ids.push_back(e.id);
    for (size_t mask = 0; mask < (size_t{1} << ids.size()); ++mask) {
        std::set<EdgeId> S;
        for (size_t i = 0; i < ids.size(); ++i)
            if (mask & (size_t{1} << i)) S.insert(ids[i]);
        if ((int)S.size() <= w.max_concurrent) continue;
        bool conc = true;
        for (EdgeId e : S) {
            bool ok = false;
            for (const auto& p : rep.st_paths) {
                std::set<EdgeId> pe(p.edges.begin(), p.edges.end());
                if (!pe.count(e)) continue;
                bool clean = true;
                for (EdgeId f : S)
                    if (f != e && pe.count(f)) clean = false;
                if (clean) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                conc = false;
                break;
            }
        }
        if (conc) w.max_concurrent = (int)S.size();
    }
    return w;
}

namespace {

std::vector<MinorOp> legal_minor_ops(const DiGraph& g) {
    std::vector<MinorOp> ops;
    std::vector<Edge> es = g.edges;
    std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (const auto& e : es) {
        if (g.outdeg(e.tail) >= 2 && g.indeg(e.head) >= 2) ops.push_back({MinorOp::Delete, e.id});
        if (g.indeg(e.head) == 1) ops.push_back({MinorOp::BackwardContract, e.id});
        if (g.outdeg(e.tail) == 1) ops.push_back({MinorOp::ForwardContract, e.id});
    }
    return ops;
}

void guard_minor_host(const Tdag& host) {
    if (host.g.vertices.size() > 8 || host.g.edges.size() > 12)
        throw GraphError(ErrKind::TooLarge, "minor-search guard: host exceeds 8 vertices / 12 edges");
}

}  // namespace

std::set<std::string> oracle_minor_closure(const Tdag& host) {
    guard_minor_host(host);
    std::set<std::string> seen;
    std::queue<DiGraph> q;
    seen.insert(canonical_form(host.g));
    q.push(host.g);
    while (!q.empty()) {
        DiGraph g = q.front();
        q.pop();
        for (const auto& op : legal_minor_ops(g)) {
            DiGraph nxt = apply_minor_op(g, op);
            if (seen.insert(canonical_form(nxt)).second) q.push(nxt);
        }
    }
    return seen;
}

std::optional<OpSequence> oracle_d_minor(const Tdag& pattern, const Tdag& host) {
    guard_minor_host(host);
    const std::string want = canonical_form(pattern.g);

    struct Node {
        DiGraph g;
        int parent;  // index into nodes
        MinorOp op;  // op that produced this node
    };
    std::vector<Node> nodes;
    std::map<std::string, int> seen;
    nodes.push_back({host.g, -1, {}});
    seen[canonical_form(host.g)] = 0;
    std::queue<int> q;
    q.push(0);

    int found = canonical_form(host.g) == want ? 0 : -1;
    while (!q.empty() && found < 0) {
        int idx = q.front();
        q.pop();
        DiGraph g = nodes[idx].g;
        // cannot shrink to the pattern if already smaller
        if (g.vertices.size() < pattern.g.vertices.size() || g.edges.size() < pattern.g.edges.size()) continue;
        for (const auto& op : legal_minor_ops(g)) {
            DiGraph nxt = apply_minor_op(g, op);
            std::string cf = canonical_form(nxt);
            if (seen.count(cf)) continue;
            nodes.push_back({nxt, idx, op});
            int nidx = (int)nodes.size() - 1;
            seen[cf] = nidx;
            if (cf == want) {
                found = nidx;
                break;
            }
            q.push(nidx);
        }
    }
    if (found < 0) return std::nullopt;

    OpSequence w;
    w.start = host.g;
    w.claimed_result = pattern.g;
    std::vector<AnyOp> rev;
    for (int cur = found; nodes[cur].parent >= 0; cur = nodes[cur].parent) rev.push_back(nodes[cur].op);
    w.ops.assign(rev.rbegin(), rev.rend());
    return w;
}

namespace {

bool oracle_paths_search(const DiGraph& g, const PathQuery& q, size_t idx, std::set<VertexId>& used,
                         PathSolution& sol) {
    if (idx == q.pairs.size()) return true;
    auto [from, to] = q.pairs[idx];

    // enumerate simple from-to paths avoiding `used`
    DirPath cur;
    cur.vertices.push_back(from);
    std::function<bool(VertexId)> dfs = [&](VertexId v) -> bool {
        if (v == to) {
            for (VertexId x : cur.vertices) used.insert(x);
            sol.paths.push_back(cur);
            if (oracle_paths_search(g, q, idx + 1, used, sol)) return true;
            sol.paths.pop_back();
            for (VertexId x : cur.vertices) used.erase(x);
            return false;
        }
        std::vector<Edge> outs = g.out_edges(v);
        std::sort(outs.begin(), outs.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
        for (const auto& e : outs) {
            if (used.count(e.head)) continue;
            if (std::find(cur.vertices.begin(), cur.vertices.end(), e.head) != cur.vertices.end()) continue;
            cur.vertices.push_back(e.head);
            cur.edges.push_back(e.id);
            if (dfs(e.head)) return true;
            cur.vertices.pop_back();
            cur.edges.pop_back();
        }
        return false;
    };
    if (used.count(from) || used.count(to)) return false;
    return dfs(from);
}

}  // namespace

std::optional<PathSolution> oracle_disjoint_paths(const DiGraph& g, const PathQuery& q) {
    check_well_formed(g);
    guard_edges(g, 20);
    check_path_query(g, q);
    PathSolution sol;
    std::set<VertexId> used;
    if (!oracle_paths_search(g, q, 0, used, sol)) return std::nullopt;
    return sol;
}

}  // namespace tdag

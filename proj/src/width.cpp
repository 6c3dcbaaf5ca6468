#include "tdag/width.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

namespace tdag {

namespace {

// Deterministic BFS path (shortest, ties by ascending edge id); nullopt when
// unreachable. from == to yields a zero-length path.
std::optional<DirPath> bfs_path(const DiGraph& g, VertexId from, VertexId to) {
    if (from == to) return DirPath{{from}, {}};
    std::map<VertexId, std::pair<VertexId, EdgeId>> par;
    std::queue<VertexId> q;
    q.push(from);
    par[from] = {from, -1};
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        std::vector<Edge> outs = g.out_edges(v);
        std::sort(outs.begin(), outs.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
        for (const auto& e : outs) {
            if (par.count(e.head)) continue;
            par[e.head] = {v, e.id};
            if (e.head == to) {
                DirPath p;
                for (VertexId x = to; x != from; x = par[x].first) {
                    p.vertices.push_back(x);
                    p.edges.push_back(par[x].second);
                }
                p.vertices.push_back(from);
                std::reverse(p.vertices.begin(), p.vertices.end());
                std::reverse(p.edges.begin(), p.edges.end());
                return p;
            }
            q.push(e.head);
        }
    }
    return std::nullopt;
}

std::vector<DirPath> all_st_paths(const DiGraph& g) {
    std::vector<DirPath> out;
    DirPath cur;
    cur.vertices.push_back(g.source);
    std::set<VertexId> on_path{g.source};
    std::function<void(VertexId)> dfs = [&](VertexId v) {
        if (v == g.target) {
            out.push_back(cur);
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
    if (g.source == g.target) {
        out.push_back(cur);
        return out;
    }
    dfs(g.source);
    return out;
}

void check_edges_exist(const DiGraph& g, const EdgeSet& S) {
    for (EdgeId e : S) g.edge(e);  // throws EdgeNotFound
}

}  // namespace

std::optional<DirPath> is_serial(const Tdag& g, const EdgeSet& S) {
    check_edges_exist(g.g, S);
    if (S.empty()) return bfs_path(g.g, g.g.source, g.g.target);

    std::map<VertexId, int> pos;
    for (size_t i = 0; i < g.topo_order.size(); ++i) pos[g.topo_order[i]] = (int)i;

    std::vector<Edge> es;
    for (EdgeId id : S) es.push_back(g.g.edge(id));
    std::sort(es.begin(), es.end(), [&](const Edge& a, const Edge& b) { return pos[a.tail] < pos[b.tail]; });

    std::set<VertexId> tails, heads;
    for (const auto& e : es) {
        if (!tails.insert(e.tail).second) return std::nullopt;  // shared tail
        if (!heads.insert(e.head).second) return std::nullopt;  // shared head
    }
    for (size_t i = 0; i + 1 < es.size(); ++i)
        if (pos[es[i].head] > pos[es[i + 1].tail]) return std::nullopt;

    // chain: s -> a_1, b_i -> a_{i+1}, b_k -> t
    std::vector<DirPath> segs;
    auto need = [&](VertexId u, VertexId v) -> bool {
        auto p = bfs_path(g.g, u, v);
        if (!p) return false;
        segs.push_back(*p);
        return true;
    };
    if (!need(g.g.source, es.front().tail)) return std::nullopt;
    for (size_t i = 0; i + 1 < es.size(); ++i)
        if (!need(es[i].head, es[i + 1].tail)) return std::nullopt;
    if (!need(es.back().head, g.g.target)) return std::nullopt;

    DirPath p = segs[0];
    for (size_t i = 0; i < es.size(); ++i) {
        p.edges.push_back(es[i].id);
        p.vertices.push_back(es[i].head);
        const DirPath& seg = segs[i + 1];
        for (size_t j = 0; j < seg.edges.size(); ++j) {
            p.edges.push_back(seg.edges[j]);
            p.vertices.push_back(seg.vertices[j + 1]);
        }
    }
    // in a topologically sorted DAG the segments cannot collide; assert it
    std::set<VertexId> uniq(p.vertices.begin(), p.vertices.end());
    if (uniq.size() != p.vertices.size())
        throw GraphError(ErrKind::EngineDisagreement, "internal error: serial chain is not a simple path");
    return p;
}

bool is_concurrent(const Tdag& g, const EdgeSet& S) {
    check_edges_exist(g.g, S);
    for (EdgeId id : S) {
        Edge e = g.g.edge(id);
        DiGraph sub = g.g;
        sub.edges.clear();
        for (const auto& f : g.g.edges)
            if (f.id == id || !S.count(f.id)) sub.edges.push_back(f);
        if (!has_path(sub, sub.source, e.tail) || !has_path(sub, e.head, sub.target)) return false;
    }
    return true;
}

namespace {

// Subsets of `cand` with size <= maxn, ordered by size then lexicographically.
std::vector<std::vector<VertexId>> small_subsets(const std::vector<VertexId>& cand, int maxn) {
    std::vector<std::vector<VertexId>> out;
    for (int sz = 0; sz <= maxn && sz <= (int)cand.size(); ++sz) {
        std::vector<int> idx(sz);
        std::function<void(int, int)> rec = [&](int at, int from) {
            if (at == sz) {
                std::vector<VertexId> sub;
                for (int i : idx) sub.push_back(cand[i]);
                out.push_back(sub);
                return;
            }
            for (int i = from; i < (int)cand.size(); ++i) {
                idx[at] = i;
                rec(at + 1, i + 1);
            }
        };
        rec(0, 0);
    }
    return out;
}

}  // namespace

std::optional<CutCertificate> is_parallel(const Tdag& g, const EdgeSet& S) {
    check_edges_exist(g.g, S);
    // the empty set is contained in a minimal cut exactly when a cut exists,
    // which fails only for the degenerate single-vertex graph
    if (S.empty()) {
        if (g.g.source == g.g.target) return std::nullopt;
        return CutCertificate{};
    }
    const DiGraph& G = g.g;
    const int k = (int)S.size();

    std::set<VertexId> A, B;
    for (EdgeId id : S) {
        A.insert(G.edge(id).tail);
        B.insert(G.edge(id).head);
    }
    for (VertexId v : A)
        if (B.count(v)) return std::nullopt;  // vertex-disjoint trees impossible

    std::map<VertexId, std::set<VertexId>> reach;
    for (VertexId v : G.vertices) reach[v] = reachable_from(G, v);

    // candidate branch vertices for each tree
    std::vector<VertexId> candS, candT;
    for (VertexId v : G.vertices) {
        if (A.count(v) || B.count(v) || v == G.source || v == G.target) continue;
        bool to_tail = false, from_head = false;
        for (VertexId a : A) to_tail = to_tail || reach[v].count(a);
        for (VertexId b : B) from_head = from_head || reach[b].count(v);
        if (G.outdeg(v) >= 2 && reach[G.source].count(v) && to_tail) candS.push_back(v);
        if (G.indeg(v) >= 2 && reach[v].count(G.target) && from_head) candT.push_back(v);
    }

    for (const auto& xs : small_subsets(candS, k - 1)) {
        for (const auto& ys : small_subsets(candT, k - 1)) {
            bool clash = false;
            for (VertexId x : xs)
                for (VertexId y : ys) clash = clash || x == y;
            if (clash) continue;

            std::set<VertexId> nodesS{G.source}, nodesT{G.target};
            nodesS.insert(A.begin(), A.end());
            nodesS.insert(xs.begin(), xs.end());
            nodesT.insert(B.begin(), B.end());
            nodesT.insert(ys.begin(), ys.end());

            std::vector<VertexId> nsv(nodesS.begin(), nodesS.end());
            std::vector<VertexId> ntv(nodesT.begin(), nodesT.end());
            std::vector<VertexId> freeS, freeT;  // nodes needing a parent / child
            for (VertexId v : nsv)
                if (v != G.source) freeS.push_back(v);
            for (VertexId v : ntv)
                if (v != G.target) freeT.push_back(v);

            std::map<VertexId, VertexId> parentS, childT;
            std::optional<CutCertificate> found;

            std::function<void(size_t)> assignT = [&](size_t i) {
                if (found) return;
                if (i == freeT.size()) {
                    // proposed junctions must actually branch
                    for (VertexId x : xs) {
                        int c = 0;
                        for (const auto& [n, p] : parentS) c += (p == x);
                        if (c < 2) return;
                    }
                    for (VertexId y : ys) {
                        int c = 0;
                        for (const auto& [n, ch] : childT) c += (ch == y);
                        if (c < 2) return;
                    }
                    std::vector<std::pair<VertexId, VertexId>> demands;
                    for (VertexId n : freeS) demands.push_back({parentS[n], n});
                    for (VertexId n : freeT) demands.push_back({n, childT[n]});
                    if (demands.empty()) {
                        found = CutCertificate{};
                        return;
                    }
                    auto paths = route_vertex_disjoint(G, demands);
                    if (!paths) return;
                    CutCertificate cert;
                    for (size_t p = 0; p < paths->size(); ++p) {
                        auto& dst = p < freeS.size() ? cert.forward_tree : cert.backward_tree;
                        for (EdgeId e : (*paths)[p].edges) dst.insert(e);
                    }
                    found = cert;
                    return;
                }
                VertexId n = freeT[i];
                for (VertexId c : ntv) {
                    if (c == n || !reach[n].count(c)) continue;
                    childT[n] = c;
                    assignT(i + 1);
                    childT.erase(n);
                    if (found) return;
                }
            };
            std::function<void(size_t)> assignS = [&](size_t i) {
                if (found) return;
                if (i == freeS.size()) {
                    assignT(0);
                    return;
                }
                VertexId n = freeS[i];
                for (VertexId p : nsv) {
                    if (p == n || !reach[p].count(n)) continue;
                    parentS[n] = p;
                    assignS(i + 1);
                    parentS.erase(n);
                    if (found) return;
                }
            };
            assignS(0);
            if (found) return found;
        }
    }
    return std::nullopt;
}

DirPath longest_path(const Tdag& g) {
    std::map<VertexId, int> dist;
    std::map<VertexId, EdgeId> via;
    dist[g.g.source] = 0;
    for (VertexId v : g.topo_order) {
        if (!dist.count(v)) continue;
        std::vector<Edge> outs = g.g.out_edges(v);
        std::sort(outs.begin(), outs.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
        for (const auto& e : outs) {
            if (!dist.count(e.head) || dist[e.head] < dist[v] + 1) {
                dist[e.head] = dist[v] + 1;
                via[e.head] = e.id;
            }
        }
    }
    DirPath p;
    VertexId v = g.g.target;
    while (v != g.g.source || p.vertices.empty()) {
        p.vertices.push_back(v);
        if (v == g.g.source) break;
        EdgeId e = via.at(v);
        p.edges.push_back(e);
        v = g.g.edge(e).tail;
    }
    std::reverse(p.vertices.begin(), p.vertices.end());
    std::reverse(p.edges.begin(), p.edges.end());
    return p;
}

bool max_serial_general(const DiGraph& g, int k) {
    check_well_formed(g);
    if (k <= 0) return has_path(g, g.source, g.target);

    std::set<VertexId> on_prefix{g.source};
    std::function<bool(VertexId, int)> dfs = [&](VertexId v, int depth) -> bool {
        if (depth == k) {
            // complete the prefix to the target avoiding its other vertices
            std::set<VertexId> blocked = on_prefix;
            blocked.erase(v);
            if (blocked.count(g.target)) return false;
            std::set<VertexId> seen{v};
            std::queue<VertexId> q;
            q.push(v);
            while (!q.empty()) {
                VertexId x = q.front();
                q.pop();
                if (x == g.target) return true;
                for (const auto& e : g.edges)
                    if (e.tail == x && !blocked.count(e.head) && seen.insert(e.head).second) q.push(e.head);
            }
            return false;
        }
        std::vector<Edge> outs = g.out_edges(v);
        std::sort(outs.begin(), outs.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
        for (const auto& e : outs) {
            if (on_prefix.count(e.head)) continue;
            on_prefix.insert(e.head);
            bool ok = dfs(e.head, depth + 1);
            on_prefix.erase(e.head);
            if (ok) return true;
        }
        return false;
    };
    return dfs(g.source, 0);
}

bool parallel_width_at_least(const Tdag& g, int k) {
    if (k <= 0) return true;
    return is_d_minor(parallel_graph(k), g).has_value();
}

int parallel_width(const Tdag& g) {
    int k = 0;
    while (k < (int)g.g.edges.size() && parallel_width_at_least(g, k + 1)) ++k;
    return k;
}

namespace {

bool spw_engine_a(const Tdag& g, int k, SpwWitness* wit) {
    auto idxs = gsp_variant_indices(k);
    for (const auto& vi : idxs) {
        Tdag pat = gsp_variant(k, vi);
        if (auto dm = is_d_minor(pat, g)) {
            if (wit) {
                wit->minor_sequence = minor_witness_from_match(pat, g, *dm);
                wit->variant = vi;
            }
            return true;
        }
    }
    return false;
}

bool spw_engine_b(const Tdag& g, int k, SpwWitness* wit) {
    for (const DirPath& p : all_st_paths(g.g)) {
        const int m = (int)p.edges.size();
        if (m < k) continue;
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            EdgeSet S;
            for (int i : idx) S.insert(p.edges[i]);
            if (auto cert = is_parallel(g, S)) {
                if (wit) *wit = extract_spw_minor_witness(g, S, p, *cert);
                return true;
            }
            // next k-combination
            int i = k - 1;
            while (i >= 0 && idx[i] == m - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return false;
}

}  // namespace

bool spw_at_least(const Tdag& g, int k, SpwEngine eng, SpwWitness* wit) {
    if (k <= 0) return true;
    if (k == 1) return !g.g.edges.empty();  // a single edge is serial and parallel
    if (2 * k > (int)g.g.vertices.size()) return false;  // SPW <= |V|/2

    switch (eng) {
        case SpwEngine::A:
            return spw_engine_a(g, k, wit);
        case SpwEngine::B:
            return spw_engine_b(g, k, wit);
        case SpwEngine::Both: {
            bool rb = spw_engine_b(g, k, wit);
            bool ra = spw_engine_a(g, k, rb ? nullptr : wit);
            if (ra != rb)
                throw GraphError(ErrKind::EngineDisagreement,
                                 "serial-parallel width engines disagree at k=" + std::to_string(k) +
                                     " (minor engine: " + (ra ? "yes" : "no") + ", direct engine: " +
                                     (rb ? "yes" : "no") + ")");
            return ra;
        }
    }
    return false;
}

int spw_value(const Tdag& g, SpwEngine eng, SpwWitness* wit) {
    int best = g.g.edges.empty() ? 0 : 1;
    const int cap = (int)g.g.vertices.size() / 2;
    for (int k = 2; k <= cap; ++k) {
        SpwWitness local;
        if (!spw_at_least(g, k, eng, wit ? &local : nullptr)) break;
        best = k;
        if (wit) *wit = local;
    }
    return best;
}

namespace {

[[noreturn]] void precondition_fail(const std::string& why) {
    throw GraphError(ErrKind::PreconditionViolated, "serial-parallel witness extraction: " + why);
}

// Fallback when the inputs resist the direct construction: search the
// variants with the embedding engine (always correct, just less literal).
SpwWitness extract_via_variant_search(const Tdag& g, const EdgeSet& S, const DirPath& path,
                                      const CutCertificate& cert, int k) {
    SpwWitness w;
    w.serial_path = path;
    w.set = S;
    w.cut_cert = cert;
    w.has_set_certificate = true;
    for (const auto& vi : gsp_variant_indices(k)) {
        Tdag pat = gsp_variant(k, vi);
        if (auto dm = is_d_minor(pat, g)) {
            w.minor_sequence = minor_witness_from_match(pat, g, *dm);
            w.variant = vi;
            auto vr = verify_witness(w.minor_sequence);
            if (!vr.ok)
                throw GraphError(ErrKind::EngineDisagreement,
                                 "internal error: variant witness failed verification: " + vr.reason);
            return w;
        }
    }
    throw GraphError(ErrKind::EngineDisagreement,
                     "certified serial-parallel set of size " + std::to_string(k) +
                         " but no k-serial-parallel variant is a minor");
}

}  // namespace

SpwWitness extract_spw_minor_witness(const Tdag& g, const EdgeSet& S, const DirPath& path,
                                     const CutCertificate& cert) {
    const DiGraph& G = g.g;
    const int k = (int)S.size();
    if (k < 2) throw GraphError(ErrKind::InvalidK, "witness extraction requires a set of size >= 2", {k});

    // --- validate the serial certificate -------------------------------
    if (path.vertices.empty() || path.vertices.front() != G.source || path.vertices.back() != G.target ||
        path.edges.size() + 1 != path.vertices.size())
        precondition_fail("path is not a source-target path");
    for (size_t i = 0; i < path.edges.size(); ++i) {
        const Edge* e = G.find_edge(path.edges[i]);
        if (!e || e->tail != path.vertices[i] || e->head != path.vertices[i + 1])
            precondition_fail("path does not follow graph edges");
    }
    std::set<VertexId> pv(path.vertices.begin(), path.vertices.end());
    if (pv.size() != path.vertices.size()) precondition_fail("path is not simple");
    std::set<EdgeId> pe(path.edges.begin(), path.edges.end());
    for (EdgeId e : S)
        if (!pe.count(e)) precondition_fail("set edge not on the path");

    // S in path order
    std::vector<int> qpos;
    for (size_t i = 0; i < path.edges.size(); ++i)
        if (S.count(path.edges[i])) qpos.push_back((int)i);

    // --- validate the parallel certificate -----------------------------
    std::set<VertexId> A, B;
    for (EdgeId id : S) {
        A.insert(G.edge(id).tail);
        B.insert(G.edge(id).head);
    }
    std::set<VertexId> Vs{G.source}, Vt{G.target};
    std::map<VertexId, VertexId> tparent;  // forward tree: vertex -> its tree parent
    std::map<VertexId, VertexId> tchild;   // backward tree: vertex -> its tree child
    for (EdgeId id : cert.forward_tree) {
        Edge e = G.edge(id);
        Vs.insert(e.tail);
        Vs.insert(e.head);
        if (tparent.count(e.head)) precondition_fail("forward tree has a vertex with two parents");
        tparent[e.head] = e.tail;
    }
    for (EdgeId id : cert.backward_tree) {
        Edge e = G.edge(id);
        Vt.insert(e.tail);
        Vt.insert(e.head);
        if (tchild.count(e.tail)) precondition_fail("backward tree has a vertex with two children");
        tchild[e.tail] = e.head;
    }
    for (VertexId v : Vs) {
        if (v == G.source) {
            if (tparent.count(v)) precondition_fail("forward tree root has a parent");
        } else if (!tparent.count(v)) {
            precondition_fail("forward tree is disconnected");
        }
        if (Vt.count(v)) precondition_fail("trees are not vertex-disjoint");
    }
    for (VertexId v : Vt)
        if (v != G.target && !tchild.count(v)) precondition_fail("backward tree is disconnected");
    for (VertexId a : A)
        if (!Vs.count(a)) precondition_fail("forward tree misses a tail");
    for (VertexId b : B)
        if (!Vt.count(b)) precondition_fail("backward tree misses a head");
    // leaves of the forward tree must be tails, roots of the backward heads
    for (VertexId v : Vs) {
        bool has_child = false;
        for (const auto& [c, p] : tparent) has_child = has_child || p == v;
        if (!has_child && !A.count(v) && v != G.source) precondition_fail("forward tree leaf is not a tail");
    }
    for (VertexId v : Vt) {
        bool has_parent = false;
        for (const auto& [p, c] : tchild) has_parent = has_parent || c == v;
        if (!has_parent && !B.count(v) && v != G.target) precondition_fail("backward tree root is not a head");
    }

    // --- reduce to path ∪ trees ----------------------------------------
    std::set<EdgeId> keep = pe;
    keep.insert(cert.forward_tree.begin(), cert.forward_tree.end());
    keep.insert(cert.backward_tree.begin(), cert.backward_tree.end());

    // the kept subgraph must be internally connected for the reduction
    {
        std::set<VertexId> kv;
        std::map<VertexId, int> kin, kout;
        for (EdgeId id : keep) {
            Edge e = G.edge(id);
            kv.insert(e.tail);
            kv.insert(e.head);
            ++kout[e.tail];
            ++kin[e.head];
        }
        for (VertexId v : kv) {
            if (v != G.source && kin[v] == 0) precondition_fail("kept subgraph has a stray source");
            if (v != G.target && kout[v] == 0) precondition_fail("kept subgraph has a stray sink");
        }
    }

    try {
        SubgraphReduction red = reduce_to_edge_subgraph(G, keep);
        std::vector<AnyOp> ops = red.ops;
        DiGraph cur = red.result;

        // --- segment analysis (original ids; edge ids are stable) ------
        // x_i = first vertex of segment b_{i-1} -> a_i lying on the forward
        // tree; y_i = last vertex of segment b_i -> a_{i+1} on the backward
        // tree. The construction needs each segment to decompose as
        // backward-tree prefix, free middle, forward-tree suffix.
        std::vector<VertexId> X(k + 1, -1), Y(k + 1, -1);  // X[2..k], Y[1..k-1]
        std::vector<std::vector<EdgeId>> middles(k);       // middles[1..k-1]
        bool clean = true;

        for (int i = 0; clean && i < qpos.front(); ++i)
            clean = cert.forward_tree.count(path.edges[i]) > 0;
        for (int i = qpos.back() + 1; clean && i < (int)path.edges.size(); ++i)
            clean = cert.backward_tree.count(path.edges[i]) > 0;

        for (int seg = 1; clean && seg <= k - 1; ++seg) {
            int lo = qpos[seg - 1] + 1, hi = qpos[seg];  // vertices path[lo..hi]
            int alpha = -1, beta = -1;
            for (int i = lo; i <= hi; ++i) {
                if (Vt.count(path.vertices[i])) alpha = i;
                if (beta < 0 && Vs.count(path.vertices[i])) beta = i;
            }
            if (alpha < 0 || beta < 0 || alpha >= beta) {
                clean = false;
                break;
            }
            for (int i = lo; i < alpha; ++i) clean = clean && cert.backward_tree.count(path.edges[i]) > 0;
            for (int i = beta; i < hi; ++i) clean = clean && cert.forward_tree.count(path.edges[i]) > 0;
            Y[seg] = path.vertices[alpha];
            X[seg + 1] = path.vertices[beta];
            for (int i = alpha; i < beta; ++i) middles[seg].push_back(path.edges[i]);
        }
        if (!clean) return extract_via_variant_search(g, S, path, cert, k);

        // current class of each junction (classes merge as we contract)
        std::set<VertexId> xclass, yclass;
        for (int i = 2; i <= k; ++i) xclass.insert(red.rep.at(X[i]));
        for (int i = 1; i <= k - 1; ++i) yclass.insert(red.rep.at(Y[i]));

        auto apply = [&](MinorOp op) {
            Edge e = cur.edge(op.edge);
            cur = apply_minor_op(cur, op);
            if (op.kind != MinorOp::Delete) {
                if (xclass.erase(e.head)) xclass.insert(e.tail);
                if (yclass.erase(e.head)) yclass.insert(e.tail);
            }
            ops.push_back(op);
        };

        // collapse the forward tree onto the x-junctions
        std::vector<EdgeId> fwd(cert.forward_tree.begin(), cert.forward_tree.end());
        std::vector<EdgeId> bwd(cert.backward_tree.begin(), cert.backward_tree.end());
        bool progress = true;
        while (progress) {
            progress = false;
            for (EdgeId id : fwd) {
                const Edge* e = cur.find_edge(id);
                if (!e || xclass.count(e->head) || cur.indeg(e->head) != 1) continue;
                apply({MinorOp::BackwardContract, id});
                progress = true;
                break;
            }
        }
        for (EdgeId id : fwd) {
            const Edge* e = cur.find_edge(id);
            if (e && !xclass.count(e->head)) return extract_via_variant_search(g, S, path, cert, k);
        }

        // collapse the backward tree onto the y-junctions
        progress = true;
        while (progress) {
            progress = false;
            for (EdgeId id : bwd) {
                const Edge* e = cur.find_edge(id);
                if (!e || yclass.count(e->tail) || cur.outdeg(e->tail) != 1) continue;
                apply({MinorOp::ForwardContract, id});
                progress = true;
                break;
            }
        }
        for (EdgeId id : bwd) {
            const Edge* e = cur.find_edge(id);
            if (e && !yclass.count(e->tail)) return extract_via_variant_search(g, S, path, cert, k);
        }

        // collapse each free middle segment to a single edge
        for (int seg = 1; seg <= k - 1; ++seg)
            for (size_t j = 0; j + 1 < middles[seg].size(); ++j)
                apply({MinorOp::BackwardContract, middles[seg][j]});

        // --- identify the variant from the junction ancestry -----------
        VariantIndex vi;
        vi.forward.k = vi.backward.k = k;
        vi.forward.parent.assign(k + 1, 0);
        vi.backward.parent.assign(k + 1, 0);
        auto xindex = [&](VertexId v) {
            if (v == G.source) return 1;
            for (int i = 2; i <= k; ++i)
                if (X[i] == v) return i;
            return -1;
        };
        auto yindex = [&](VertexId v) {
            if (v == G.target) return k;
            for (int i = 1; i <= k - 1; ++i)
                if (Y[i] == v) return i;
            return -1;
        };
        for (int i = 2; i <= k; ++i) {
            VertexId v = tparent.at(X[i]);
            while (xindex(v) < 0) v = tparent.at(v);
            int j = xindex(v);
            if (j >= i) return extract_via_variant_search(g, S, path, cert, k);
            vi.forward.parent[i] = j;
        }
        for (int i = 1; i <= k - 1; ++i) {
            VertexId v = tchild.at(Y[i]);
            while (yindex(v) < 0) v = tchild.at(v);
            int j = yindex(v);
            if (j <= i) return extract_via_variant_search(g, S, path, cert, k);
            vi.backward.parent[i] = j;
        }

        Tdag claimed = gsp_variant(k, vi);
        if (!is_isomorphic(cur, claimed.g)) return extract_via_variant_search(g, S, path, cert, k);

        SpwWitness w;
        w.serial_path = path;
        w.set = S;
        w.cut_cert = cert;
        w.has_set_certificate = true;
        w.minor_sequence = OpSequence{G, ops, claimed.g};
        w.variant = vi;
        auto vr = verify_witness(w.minor_sequence);
        if (!vr.ok) return extract_via_variant_search(g, S, path, cert, k);
        return w;
    } catch (const GraphError& e) {
        if (e.kind == ErrKind::PreconditionViolated || e.kind == ErrKind::EdgeNotFound)
            return extract_via_variant_search(g, S, path, cert, k);
        throw;
    }
}

std::optional<SpDecomposition> is_series_parallel(const Tdag& g) {
    DiGraph cur = g.g;
    SpDecomposition d;
    std::map<EdgeId, int> node_of;
    {
        std::vector<Edge> es = cur.edges;
        std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
        for (const auto& e : es) {
            d.nodes.push_back({SpNode::Leaf, e.id, -1, -1});
            node_of[e.id] = (int)d.nodes.size() - 1;
        }
    }

    auto sorted_edges = [&]() {
        std::vector<Edge> es = cur.edges;
        std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
        return es;
    };

    bool progress = true;
    while (progress) {
        progress = false;
        // parallel rule: two edges with the same tail and head
        std::vector<Edge> es = sorted_edges();
        for (size_t i = 0; i < es.size() && !progress; ++i)
            for (size_t j = i + 1; j < es.size() && !progress; ++j) {
                if (es[i].tail != es[j].tail || es[i].head != es[j].head) continue;
                d.nodes.push_back({SpNode::Parallel, -1, node_of[es[i].id], node_of[es[j].id]});
                node_of[es[i].id] = (int)d.nodes.size() - 1;
                cur.edges.erase(std::remove_if(cur.edges.begin(), cur.edges.end(),
                                               [&](const Edge& e) { return e.id == es[j].id; }),
                                cur.edges.end());
                progress = true;
            }
        if (progress) continue;
        // series rule: internal vertex with indegree 1 and outdegree 1
        for (VertexId v : cur.vertices) {
            if (v == cur.source || v == cur.target) continue;
            if (cur.indeg(v) != 1 || cur.outdeg(v) != 1) continue;
            Edge in = cur.in_edges(v)[0];
            Edge out = cur.out_edges(v)[0];
            d.nodes.push_back({SpNode::Series, -1, node_of[in.id], node_of[out.id]});
            node_of[in.id] = (int)d.nodes.size() - 1;
            cur.edges.erase(std::remove_if(cur.edges.begin(), cur.edges.end(),
                                           [&](const Edge& e) { return e.id == in.id || e.id == out.id; }),
                            cur.edges.end());
            cur.edges.push_back({in.id, in.tail, out.head});
            cur.vertices.erase(v);
            progress = true;
            break;
        }
    }
    if (cur.edges.size() == 1 && cur.vertices.size() == 2 && cur.edges[0].tail == cur.source &&
        cur.edges[0].head == cur.target) {
        d.root = node_of[cur.edges[0].id];
        return d;
    }
    return std::nullopt;
}

}  // namespace tdag

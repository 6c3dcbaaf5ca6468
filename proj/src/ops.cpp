#include "tdag/ops.hpp"

#include <algorithm>

#include "json.hpp"
#include "tdag/io.hpp"

namespace tdag {

namespace {

[[noreturn]] void violated(const std::string& msg, std::vector<int> w = {}) {
    throw GraphError(ErrKind::PreconditionViolated, msg, std::move(w));
}

// Merge vertex b into vertex a (a survives) after removing edge `removed`.
DiGraph merge_vertices(const DiGraph& g, EdgeId removed, VertexId a, VertexId b) {
    DiGraph r = g;
    std::erase_if(r.edges, [&](const Edge& e) { return e.id == removed; });
    for (auto& e : r.edges) {
        if (e.tail == b) e.tail = a;
        if (e.head == b) e.head = a;
        if (e.tail == e.head)
            violated("contracting edge " + std::to_string(removed) + " would create a self-loop", {removed});
    }
    r.vertices.erase(b);
    if (r.source == b) r.source = a;
    if (r.target == b) r.target = a;
    return r;
}

}  // namespace

DiGraph apply_minor_op(const DiGraph& g, const MinorOp& op) {
    const Edge e = g.edge(op.edge);
    switch (op.kind) {
        case MinorOp::Delete: {
            if (g.outdeg(e.tail) < 2)
                violated("cannot delete edge " + std::to_string(e.id) + ": tail would lose its last out-edge", {e.id});
            if (g.indeg(e.head) < 2)
                violated("cannot delete edge " + std::to_string(e.id) + ": head would lose its last in-edge", {e.id});
            DiGraph r = g;
            std::erase_if(r.edges, [&](const Edge& x) { return x.id == e.id; });
            return r;
        }
        case MinorOp::BackwardContract: {
            if (g.indeg(e.head) != 1)
                violated("backward contraction of edge " + std::to_string(e.id) + " requires indegree(head) == 1",
                         {e.id});
            return merge_vertices(g, e.id, e.tail, e.head);
        }
        case MinorOp::ForwardContract: {
            if (g.outdeg(e.tail) != 1)
                violated("forward contraction of edge " + std::to_string(e.id) + " requires outdegree(tail) == 1",
                         {e.id});
            return merge_vertices(g, e.id, e.tail, e.head);
        }
    }
    violated("unknown minor op");
}

DiGraph apply_embed_op(const DiGraph& g, const EmbedOp& op) {
    auto need_fresh_vertex = [&](VertexId v) {
        if (g.has_vertex(v)) violated("new vertex id " + std::to_string(v) + " already in use", {v});
    };
    auto need_fresh_edge = [&](EdgeId e) {
        if (g.find_edge(e)) violated("new edge id " + std::to_string(e) + " already in use", {e});
    };
    switch (op.kind) {
        case EmbedOp::AddEdge: {
            if (!g.has_vertex(op.tail) || !g.has_vertex(op.head))
                throw GraphError(ErrKind::VertexNotFound, "add-edge endpoint missing", {op.tail, op.head});
            if (op.tail == op.head) violated("add-edge would create a self-loop", {op.tail});
            if (has_path(g, op.head, op.tail))
                violated("add-edge (" + std::to_string(op.tail) + "," + std::to_string(op.head) +
                         ") would close a cycle");
            need_fresh_edge(op.new_edge);
            DiGraph r = g;
            r.edges.push_back({op.new_edge, op.tail, op.head});
            return r;
        }
        case EmbedOp::ForwardSplit: {
            if (!g.has_vertex(op.vertex))
                throw GraphError(ErrKind::VertexNotFound, "split vertex missing", {op.vertex});
            if (op.vertex == g.target) violated("cannot forward-split the target");
            if (op.moved.empty()) violated("forward split must move at least one out-edge");
            need_fresh_vertex(op.new_vertex);
            need_fresh_edge(op.new_edge);
            DiGraph r = g;
            for (EdgeId id : op.moved) {
                const Edge& me = r.edge(id);
                if (me.tail != op.vertex)
                    violated("edge " + std::to_string(id) + " is not an out-edge of the split vertex", {id});
            }
            for (auto& e : r.edges)
                if (std::find(op.moved.begin(), op.moved.end(), e.id) != op.moved.end()) e.tail = op.new_vertex;
            r.vertices.insert(op.new_vertex);
            r.edges.push_back({op.new_edge, op.vertex, op.new_vertex});
            return r;
        }
        case EmbedOp::BackwardSplit: {
            if (!g.has_vertex(op.vertex))
                throw GraphError(ErrKind::VertexNotFound, "split vertex missing", {op.vertex});
            if (op.vertex == g.source) violated("cannot backward-split the source");
            if (op.moved.empty()) violated("backward split must move at least one in-edge");
            need_fresh_vertex(op.new_vertex);
            need_fresh_edge(op.new_edge);
            DiGraph r = g;
            for (EdgeId id : op.moved) {
                const Edge& me = r.edge(id);
                if (me.head != op.vertex)
                    violated("edge " + std::to_string(id) + " is not an in-edge of the split vertex", {id});
            }
            for (auto& e : r.edges)
                if (std::find(op.moved.begin(), op.moved.end(), e.id) != op.moved.end()) e.head = op.new_vertex;
            r.vertices.insert(op.new_vertex);
            r.edges.push_back({op.new_edge, op.new_vertex, op.vertex});
            return r;
        }
        case EmbedOp::Subdivide: {
            const Edge e = g.edge(op.edge);
            need_fresh_vertex(op.new_vertex);
            need_fresh_edge(op.new_edge);
            DiGraph r = g;
            r.vertices.insert(op.new_vertex);
            for (auto& x : r.edges)
                if (x.id == e.id) x = {e.id, op.new_vertex, e.head};  // (w,v) keeps the id
            r.edges.push_back({op.new_edge, e.tail, op.new_vertex});  // (u,w)
            return r;
        }
        case EmbedOp::TerminalExtend: {
            need_fresh_vertex(op.new_vertex);
            need_fresh_edge(op.new_edge);
            DiGraph r = g;
            r.vertices.insert(op.new_vertex);
            if (op.at_source) {
                r.edges.push_back({op.new_edge, op.new_vertex, r.source});
                r.source = op.new_vertex;
            } else {
                r.edges.push_back({op.new_edge, r.target, op.new_vertex});
                r.target = op.new_vertex;
            }
            return r;
        }
    }
    violated("unknown embedding op");
}

DiGraph apply_op(const DiGraph& g, const AnyOp& op) {
    if (std::holds_alternative<MinorOp>(op)) return apply_minor_op(g, std::get<MinorOp>(op));
    return apply_embed_op(g, std::get<EmbedOp>(op));
}

AnyOp invert_op(const DiGraph& g_before, const AnyOp& op) {
    DiGraph g_after;
    try {
        validate_tdag(g_before);
        g_after = apply_op(g_before, op);
        validate_tdag(g_after);
    } catch (const GraphError& e) {
        if (e.kind == ErrKind::PreconditionViolated || e.kind == ErrKind::EdgeNotFound ||
            e.kind == ErrKind::VertexNotFound)
            throw;
        throw GraphError(ErrKind::NotInvertibleOutsideTdag,
                         std::string("inversion is only defined between valid 2-terminal DAGs: ") + e.what());
    }

    if (std::holds_alternative<MinorOp>(op)) {
        const MinorOp& m = std::get<MinorOp>(op);
        const Edge e = g_before.edge(m.edge);
        EmbedOp inv;
        switch (m.kind) {
            case MinorOp::Delete:
                inv.kind = EmbedOp::AddEdge;
                inv.tail = e.tail;
                inv.head = e.head;
                inv.new_edge = e.id;
                return inv;
            case MinorOp::BackwardContract: {
                // split the out-edges that belonged to the contracted head back out
                inv.kind = EmbedOp::ForwardSplit;
                inv.vertex = e.tail;
                for (const auto& x : g_before.edges)
                    if (x.tail == e.head) inv.moved.push_back(x.id);
                if (inv.moved.empty()) {
                    // the contracted head was the target: undo as a terminal extension
                    inv = EmbedOp{};
                    inv.kind = EmbedOp::TerminalExtend;
                    inv.at_source = false;
                }
                inv.new_vertex = g_after.fresh_vertex_id();
                inv.new_edge = e.id;
                return inv;
            }
            case MinorOp::ForwardContract: {
                // split the in-edges that belonged to the contracted tail back out
                inv.kind = EmbedOp::BackwardSplit;
                inv.vertex = e.tail;  // merged vertex keeps the tail's id
                for (const auto& x : g_before.edges)
                    if (x.head == e.tail) inv.moved.push_back(x.id);
                if (inv.moved.empty()) {
                    // the contracted tail was the source: undo as a terminal extension
                    inv = EmbedOp{};
                    inv.kind = EmbedOp::TerminalExtend;
                    inv.at_source = true;
                }
                inv.new_vertex = g_after.fresh_vertex_id();
                inv.new_edge = e.id;
                return inv;
            }
        }
    }
    const EmbedOp& em = std::get<EmbedOp>(op);
    MinorOp inv;
    switch (em.kind) {
        case EmbedOp::AddEdge:
            inv.kind = MinorOp::Delete;
            inv.edge = em.new_edge;
            return inv;
        case EmbedOp::ForwardSplit:
            inv.kind = MinorOp::BackwardContract;
            inv.edge = em.new_edge;
            return inv;
        case EmbedOp::BackwardSplit:
            inv.kind = MinorOp::ForwardContract;
            inv.edge = em.new_edge;
            return inv;
        case EmbedOp::Subdivide:
            // the new vertex has indegree 1 via the new first half
            inv.kind = MinorOp::BackwardContract;
            inv.edge = em.new_edge;
            return inv;
        case EmbedOp::TerminalExtend:
            inv.kind = em.at_source ? MinorOp::ForwardContract : MinorOp::BackwardContract;
            inv.edge = em.new_edge;
            return inv;
    }
    violated("unknown op");
}

VerifyResult verify_witness(const OpSequence& w) {
    bool expect_minor = !w.ops.empty() && std::holds_alternative<MinorOp>(w.ops.front());
    DiGraph cur = w.start;
    for (size_t i = 0; i < w.ops.size(); ++i) {
        if (std::holds_alternative<MinorOp>(w.ops[i]) != expect_minor)
            return {false, (int)i, "witness mixes minor and embedding operations"};
        try {
            cur = apply_op(cur, w.ops[i]);
        } catch (const GraphError& e) {
            return {false, (int)i, e.what()};
        }
    }
    if (!is_isomorphic(cur, w.claimed_result))
        return {false, (int)w.ops.size(), "replayed graph is not isomorphic to the claimed result"};
    return {true, -1, ""};
}

namespace {

nlohmann::json op_to_json(const AnyOp& op) {
    nlohmann::json j;
    if (std::holds_alternative<MinorOp>(op)) {
        const MinorOp& m = std::get<MinorOp>(op);
        j["op"] = m.kind == MinorOp::Delete            ? "delete"
                  : m.kind == MinorOp::BackwardContract ? "backward-contract"
                                                        : "forward-contract";
        j["edge"] = m.edge;
        return j;
    }
    const EmbedOp& e = std::get<EmbedOp>(op);
    switch (e.kind) {
        case EmbedOp::AddEdge:
            j["op"] = "add-edge";
            j["tail"] = e.tail;
            j["head"] = e.head;
            j["new_edge"] = e.new_edge;
            break;
        case EmbedOp::ForwardSplit:
        case EmbedOp::BackwardSplit:
            j["op"] = e.kind == EmbedOp::ForwardSplit ? "forward-split" : "backward-split";
            j["vertex"] = e.vertex;
            j["moved"] = e.moved;
            j["new_vertex"] = e.new_vertex;
            j["new_edge"] = e.new_edge;
            break;
        case EmbedOp::Subdivide:
            j["op"] = "subdivide";
            j["edge"] = e.edge;
            j["new_vertex"] = e.new_vertex;
            j["new_edge"] = e.new_edge;
            break;
        case EmbedOp::TerminalExtend:
            j["op"] = "terminal-extend";
            j["end"] = e.at_source ? "source" : "target";
            j["new_vertex"] = e.new_vertex;
            j["new_edge"] = e.new_edge;
            break;
    }
    return j;
}

AnyOp op_from_json(const nlohmann::json& j) {
    std::string op = j.at("op").get<std::string>();
    if (op == "delete" || op == "backward-contract" || op == "forward-contract") {
        MinorOp m;
        m.kind = op == "delete" ? MinorOp::Delete : op == "backward-contract" ? MinorOp::BackwardContract : MinorOp::ForwardContract;
        m.edge = j.at("edge").get<int>();
        return m;
    }
    EmbedOp e;
    if (op == "add-edge") {
        e.kind = EmbedOp::AddEdge;
        e.tail = j.at("tail").get<int>();
        e.head = j.at("head").get<int>();
        e.new_edge = j.at("new_edge").get<int>();
    } else if (op == "forward-split" || op == "backward-split") {
        e.kind = op == "forward-split" ? EmbedOp::ForwardSplit : EmbedOp::BackwardSplit;
        e.vertex = j.at("vertex").get<int>();
        e.moved = j.at("moved").get<std::vector<int>>();
        e.new_vertex = j.at("new_vertex").get<int>();
        e.new_edge = j.at("new_edge").get<int>();
    } else if (op == "subdivide") {
        e.kind = EmbedOp::Subdivide;
        e.edge = j.at("edge").get<int>();
        e.new_vertex = j.at("new_vertex").get<int>();
        e.new_edge = j.at("new_edge").get<int>();
    } else if (op == "terminal-extend") {
        e.kind = EmbedOp::TerminalExtend;
        e.at_source = j.at("end").get<std::string>() == "source";
        e.new_vertex = j.at("new_vertex").get<int>();
        e.new_edge = j.at("new_edge").get<int>();
    } else {
        throw GraphError(ErrKind::BadInput, "unknown op tag: " + op);
    }
    return e;
}

}  // namespace

OpSequence witness_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(ErrKind::BadInput, std::string("invalid JSON: ") + e.what());
    }
    OpSequence w;
    try {
        w.start = graph_from_json(j.at("start").dump());
        w.claimed_result = graph_from_json(j.at("result").dump());
        for (const auto& o : j.at("ops")) w.ops.push_back(op_from_json(o));
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(ErrKind::BadInput, std::string("witness JSON missing fields: ") + e.what());
    }
    return w;
}

std::string witness_to_json(const OpSequence& w) {
    nlohmann::json j;
    j["start"] = nlohmann::json::parse(graph_to_json(w.start));
    j["result"] = nlohmann::json::parse(graph_to_json(w.claimed_result));
    j["ops"] = nlohmann::json::array();
    for (const auto& o : w.ops) j["ops"].push_back(op_to_json(o));
    return j.dump();
}

}  // namespace tdag

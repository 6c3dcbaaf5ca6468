#pragma once

#include <string>
#include <variant>
#include <vector>

#include "tdag/graph.hpp"

namespace tdag {

// Local minor operations. Preconditions checked at application time:
//   Delete(a,b):           outdeg(a) >= 2 and indeg(b) >= 2
//   BackwardContract(a,b): indeg(b) == 1
//   ForwardContract(a,b):  outdeg(a) == 1
// Contractions merge b into a; the merged vertex keeps a's id.
struct MinorOp {
    enum Kind { Delete, BackwardContract, ForwardContract };
    Kind kind;
    EdgeId edge;
};

// Local embedding operations. Preconditions checked at application time:
//   AddEdge(a,b):     no directed b-a path, a != b
//   ForwardSplit(a):  a != target; a keeps all in-edges; the new vertex takes
//                     a nonempty set of a's out-edges plus the new edge (a,b)
//   BackwardSplit(b): b != source; symmetric
//   Subdivide(e):     always legal; e=(u,v) becomes (u,w) [id new_edge] and
//                     (w,v) [keeps e's id]
//   TerminalExtend:   always legal; prepends to the source / appends to target
struct EmbedOp {
    enum Kind { AddEdge, ForwardSplit, BackwardSplit, Subdivide, TerminalExtend };
    Kind kind;
    VertexId tail = -1, head = -1;  // AddEdge endpoints
    VertexId vertex = -1;           // split vertex
    std::vector<EdgeId> moved;      // split: edge ids moved to the new vertex
    EdgeId edge = -1;               // Subdivide target
    VertexId new_vertex = -1;       // created vertex (splits, subdivide, extend)
    EdgeId new_edge = -1;           // created edge
    bool at_source = true;          // TerminalExtend end
};

using AnyOp = std::variant<MinorOp, EmbedOp>;

// A replayable witness: ops must be homogeneous (all minor or all embedding).
struct OpSequence {
    DiGraph start;
    std::vector<AnyOp> ops;
    DiGraph claimed_result;
};

DiGraph apply_minor_op(const DiGraph& g, const MinorOp& op);
DiGraph apply_embed_op(const DiGraph& g, const EmbedOp& op);
DiGraph apply_op(const DiGraph& g, const AnyOp& op);

// Returns the op of the opposite family such that applying op and then its
// inverse yields a graph isomorphic to g_before. Both g_before and the
// post-op graph must be valid TDAGs, else NotInvertibleOutsideTdag.
AnyOp invert_op(const DiGraph& g_before, const AnyOp& op);

struct VerifyResult {
    bool ok = false;
    int failed_step = -1;  // -1 when ok; ops.size() marks a final-isomorphism failure
    std::string reason;
};

// Replays ops from w.start with full precondition checking; ok iff every step
// is legal and the final graph is isomorphic to w.claimed_result.
VerifyResult verify_witness(const OpSequence& w);

OpSequence witness_from_json(const std::string& text);
std::string witness_to_json(const OpSequence& w);

}  // namespace tdag

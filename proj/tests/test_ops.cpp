#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tdag/families.hpp"
#include "tdag/graph.hpp"
#include "tdag/ops.hpp"
#include "test_helpers.hpp"

using namespace tdag;
using namespace tdag::testutil;

// Braess edge ids: 0=(s,a) 1=(s,b) 2=(a,b) 3=(a,t) 4=(b,t)

TEST_CASE("backward contraction needs an indegree-1 head") {
    DiGraph g = braess().g;
    CHECK_THROWS_AS(apply_minor_op(g, {MinorOp::BackwardContract, 2}), GraphError);
    // after deleting (s,b), vertex b has indegree 1 and the contraction works
    DiGraph h = apply_minor_op(g, {MinorOp::Delete, 1});
    DiGraph r = apply_minor_op(h, {MinorOp::BackwardContract, 2});
    CHECK(r.vertices.size() == 3);
    CHECK(r.edges.size() == 3);
    CHECK_NOTHROW(validate_tdag(r));
}

TEST_CASE("deletion needs degree 2 on both sides") {
    DiGraph p = parallel_graph(2).g;
    DiGraph r = apply_minor_op(p, {MinorOp::Delete, 0});
    CHECK(r.edges.size() == 1);
    CHECK(is_isomorphic(r, single_edge().g).has_value());
    // deleting the only edge of a single-edge graph is not allowed
    CHECK_THROWS_AS(apply_minor_op(r, {MinorOp::Delete, r.edges[0].id}), GraphError);
}

TEST_CASE("forward contraction precondition") {
    DiGraph g = braess().g;
    CHECK_THROWS_AS(apply_minor_op(g, {MinorOp::ForwardContract, 1}), GraphError);
    // chain edge: tail has outdegree 1
    DiGraph c = chain(2).g;
    DiGraph r = apply_minor_op(c, {MinorOp::ForwardContract, 0});
    CHECK(is_isomorphic(r, single_edge().g).has_value());
    CHECK(r.has_vertex(0));  // merged vertex keeps the tail's id
}

TEST_CASE("forward split turns the junction graph into its split companion") {
    DiGraph g = junction_graph().g;
    EmbedOp op;
    op.kind = EmbedOp::ForwardSplit;
    op.vertex = 2;
    op.moved = {2, 3};  // both out-edges go to the new vertex
    op.new_vertex = g.fresh_vertex_id();
    op.new_edge = g.fresh_edge_id();
    DiGraph r = apply_embed_op(g, op);
    CHECK(is_isomorphic(r, junction_split_graph().g).has_value());
}

TEST_CASE("edge addition may not close a cycle") {
    DiGraph g = braess().g;
    EmbedOp op;
    op.kind = EmbedOp::AddEdge;
    op.tail = 1;  // t
    op.head = 0;  // s
    op.new_edge = g.fresh_edge_id();
    CHECK_THROWS_AS(apply_embed_op(g, op), GraphError);
}

TEST_CASE("subdividing a single edge yields a 2-edge chain") {
    DiGraph g = single_edge().g;
    EmbedOp op;
    op.kind = EmbedOp::Subdivide;
    op.edge = 0;
    op.new_vertex = g.fresh_vertex_id();
    op.new_edge = g.fresh_edge_id();
    DiGraph r = apply_embed_op(g, op);
    CHECK(is_isomorphic(r, chain(2).g).has_value());
    // the second half keeps the subdivided edge's id
    CHECK(r.edge(0).head == g.edge(0).head);
}

TEST_CASE("inverse of a forward split is a backward contraction") {
    DiGraph g = junction_graph().g;
    EmbedOp op;
    op.kind = EmbedOp::ForwardSplit;
    op.vertex = 2;
    op.moved = {2};
    op.new_vertex = g.fresh_vertex_id();
    op.new_edge = g.fresh_edge_id();
    AnyOp inv = invert_op(g, op);
    REQUIRE(std::holds_alternative<MinorOp>(inv));
    CHECK(std::get<MinorOp>(inv).kind == MinorOp::BackwardContract);
    CHECK(std::get<MinorOp>(inv).edge == op.new_edge);
    DiGraph round = apply_op(apply_embed_op(g, op), inv);
    CHECK(is_isomorphic(round, g).has_value());
}

TEST_CASE("inverse of a deletion is an edge addition") {
    DiGraph g = braess().g;
    MinorOp del{MinorOp::Delete, 1};  // (s,b)
    AnyOp inv = invert_op(g, del);
    REQUIRE(std::holds_alternative<EmbedOp>(inv));
    CHECK(std::get<EmbedOp>(inv).kind == EmbedOp::AddEdge);
    DiGraph round = apply_op(apply_minor_op(g, del), inv);
    CHECK(is_isomorphic(round, g).has_value());
}

TEST_CASE("inverse of a subdivision is a backward contraction of the second half") {
    DiGraph g = braess().g;
    EmbedOp op;
    op.kind = EmbedOp::Subdivide;
    op.edge = 2;
    op.new_vertex = g.fresh_vertex_id();
    op.new_edge = g.fresh_edge_id();
    AnyOp inv = invert_op(g, op);
    REQUIRE(std::holds_alternative<MinorOp>(inv));
    CHECK(std::get<MinorOp>(inv).kind == MinorOp::BackwardContract);
    DiGraph round = apply_op(apply_embed_op(g, op), inv);
    CHECK(is_isomorphic(round, g).has_value());
}

TEST_CASE("round trip over all small graphs and legal operations") {
    std::mt19937 rng(3);
    for (const auto& t : enumerate_tdags(5)) {
        for (const auto& mop : legal_minor_ops(t.g)) {
            AnyOp inv = invert_op(t.g, AnyOp{mop});
            DiGraph round = apply_op(apply_minor_op(t.g, mop), inv);
            CHECK(is_isomorphic(round, t.g).has_value());
        }
        if (t.g.edges.empty()) continue;
        for (int rep = 0; rep < 3; ++rep) {
            EmbedOp eop = random_embed_op(rng, t);
            AnyOp inv = invert_op(t.g, AnyOp{eop});
            DiGraph round = apply_op(apply_embed_op(t.g, eop), inv);
            CHECK(is_isomorphic(round, t.g).has_value());
        }
    }
}

TEST_CASE("every edge of a TDAG admits some minor operation") {
    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        Tdag t = random_tdag(rng, 7, 10);
        for (const auto& e : t.g.edges) {
            bool ok = (t.g.outdeg(e.tail) >= 2 && t.g.indeg(e.head) >= 2) || t.g.indeg(e.head) == 1 ||
                      t.g.outdeg(e.tail) == 1;
            CHECK(ok);
        }
    }
}

TEST_CASE("legal operations preserve TDAG structure") {
    std::mt19937 rng(9);
    for (int i = 0; i < 500; ++i) {
        Tdag t = random_tdag(rng, 7, 10);
        AnyOp op = random_legal_op(rng, t);
        CHECK_NOTHROW(validate_tdag(apply_op(t.g, op)));
    }
}

TEST_CASE("witness verification replays and checks the claimed result") {
    DiGraph start = braess().g;
    DiGraph mid = apply_minor_op(start, {MinorOp::Delete, 1});
    DiGraph fin = apply_minor_op(mid, {MinorOp::BackwardContract, 2});
    OpSequence w{start, {MinorOp{MinorOp::Delete, 1}, MinorOp{MinorOp::BackwardContract, 2}}, fin};
    VerifyResult r = verify_witness(w);
    CHECK(r.ok);
    CHECK(r.failed_step == -1);

    // reordering puts the contraction before the deletion: illegal at step 0
    OpSequence bad{start, {MinorOp{MinorOp::BackwardContract, 2}, MinorOp{MinorOp::Delete, 1}}, fin};
    VerifyResult rb = verify_witness(bad);
    CHECK_FALSE(rb.ok);
    CHECK(rb.failed_step == 0);

    // wrong claimed result fails at the final isomorphism check
    OpSequence wrong{start, {MinorOp{MinorOp::Delete, 1}}, fin};
    VerifyResult rw = verify_witness(wrong);
    CHECK_FALSE(rw.ok);
    CHECK(rw.failed_step == 1);
}

TEST_CASE("empty witness verifies trivially") {
    OpSequence w{braess().g, {}, braess().g};
    CHECK(verify_witness(w).ok);
}

TEST_CASE("witness JSON round trip") {
    DiGraph start = braess().g;
    DiGraph mid = apply_minor_op(start, {MinorOp::Delete, 1});
    DiGraph fin = apply_minor_op(mid, {MinorOp::BackwardContract, 2});
    OpSequence w{start, {MinorOp{MinorOp::Delete, 1}, MinorOp{MinorOp::BackwardContract, 2}}, fin};
    OpSequence back = witness_from_json(witness_to_json(w));
    CHECK(verify_witness(back).ok);
    CHECK(back.start == w.start);
    CHECK(back.claimed_result == w.claimed_result);

    EmbedOp sub;
    sub.kind = EmbedOp::Subdivide;
    sub.edge = 0;
    sub.new_vertex = start.fresh_vertex_id();
    sub.new_edge = start.fresh_edge_id();
    OpSequence we{start, {sub}, apply_embed_op(start, sub)};
    CHECK(verify_witness(witness_from_json(witness_to_json(we))).ok);
}

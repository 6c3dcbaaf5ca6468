#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tdag/embed.hpp"
#include "tdag/families.hpp"
#include "tdag/graph.hpp"
#include "tdag/oracle.hpp"
#include "test_helpers.hpp"

using namespace tdag;
using namespace tdag::testutil;

TEST_CASE("hub detection") {
    CHECK(hubs(braess().g).empty());
    CHECK(hubs(junction_split_graph().g).empty());
    auto h = hubs(junction_graph().g);
    REQUIRE(h.size() == 1);
    CHECK(h[0].vertex == 2);
    CHECK(h[0].indegree == 2);
    CHECK(h[0].outdegree == 2);
}

TEST_CASE("expansions within the pattern's own size are just the pattern") {
    auto ex = hub_expansions(braess().g, 4, 5);
    REQUIRE(ex.size() == 1);
    CHECK(ex[0].graph == braess().g);
    CHECK(ex[0].provenance.empty());

    auto se = hub_expansions(single_edge().g, 6, 6);
    REQUIRE(se.size() == 1);  // no split can move two edges of a degree-1 vertex
    CHECK(se[0].graph == single_edge().g);
}

TEST_CASE("expansions of the junction graph contain its split companion") {
    auto ex = hub_expansions(junction_graph().g, 4, 5);
    bool found = false;
    for (const auto& e : ex)
        if (is_isomorphic(e.graph, junction_split_graph().g).has_value()) found = true;
    CHECK(found);
    // provenance replays from the pattern to the expansion
    for (const auto& e : ex) {
        DiGraph cur = junction_graph().g;
        for (const auto& op : e.provenance) cur = apply_embed_op(cur, op);
        CHECK(cur == e.graph);
    }
}

TEST_CASE("homeomorphic embedding distinguishes the junction pair") {
    CHECK_FALSE(is_h_embedded(junction_graph(), junction_split_graph()).has_value());
    auto m = is_h_embedded(braess(), gsp(3));
    REQUIRE(m.has_value());
    CHECK(check_pattern_match(braess(), gsp(3), *m));
}

TEST_CASE("a single edge h-embeds in any TDAG") {
    for (const auto& host : {braess(), gsp(3), junction_graph(), diamond(), chain(4)}) {
        auto m = is_h_embedded(single_edge(), host);
        REQUIRE(m.has_value());
        CHECK(check_pattern_match(single_edge(), host, *m));
    }
}

TEST_CASE("d-embedding accepts the junction pair via a split expansion") {
    auto m = is_d_embedded(junction_graph(), junction_split_graph().g);
    REQUIRE(m.has_value());
    CHECK_FALSE(m->expansion.provenance.empty());
    CHECK(check_pattern_match(validate_tdag(m->expansion.graph), junction_split_graph(), m->match));
}

TEST_CASE("the Braess pattern is not d-embedded in series-parallel hosts") {
    CHECK_FALSE(is_d_embedded(braess(), junction_split_graph().g).has_value());
    CHECK_FALSE(is_d_embedded(braess(), parallel_graph(5).g).has_value());
    CHECK_FALSE(is_d_embedded(braess(), chain(6).g).has_value());
}

TEST_CASE("identity d-embedding") {
    for (const auto& p : {braess(), gsp(3), junction_graph()}) {
        auto m = is_d_embedded(p, p.g);
        REQUIRE(m.has_value());
        CHECK(m->expansion.provenance.empty());
    }
}

TEST_CASE("cyclic hosts are rejected as values, bad hosts as errors") {
    CHECK_FALSE(is_d_embedded(braess(), cyclic_two_terminal()).has_value());
    DiGraph two;
    two.vertices = {0, 1, 2, 3};
    two.edges = {{0, 0, 1}, {1, 2, 3}};
    two.source = 0;
    two.target = 1;
    try {
        is_d_embedded(braess(), two);
        FAIL("expected HostNotTwoTerminal");
    } catch (const GraphError& e) {
        CHECK(e.kind == ErrKind::HostNotTwoTerminal);
    }
}

TEST_CASE("d-minor examples") {
    CHECK(is_d_minor(braess(), braess()).has_value());
    CHECK_FALSE(is_d_minor(gsp(3), braess()).has_value());
    auto vs = gsp_variants(3);
    auto m = is_d_minor(braess(), vs[2]);
    REQUIRE(m.has_value());
    OpSequence w = minor_witness_from_match(braess(), vs[2], *m);
    VerifyResult vr = verify_witness(w);
    CHECK(vr.ok);
    CHECK(is_isomorphic(w.claimed_result, braess().g).has_value());
    CHECK(oracle_d_minor(braess(), vs[2]).has_value());
}

TEST_CASE("h-embedding implies d-embedding") {
    std::mt19937 rng(31);
    std::vector<Tdag> patterns = {single_edge(), parallel_graph(2), chain(2), braess()};
    for (int i = 0; i < 25; ++i) {
        Tdag host = random_tdag(rng, 6, 9);
        for (const auto& p : patterns)
            if (is_h_embedded(p, host).has_value()) CHECK(is_d_embedded(p, host.g).has_value());
    }
}

TEST_CASE("valid subgraphs are always d-embedded in their host") {
    std::mt19937 rng(37);
    for (int i = 0; i < 20; ++i) {
        Tdag host = random_tdag(rng, 6, 9);
        auto rep = oracle_enumerate(host.g);
        // union of a random nonempty set of s-t paths is a valid subgraph
        std::set<EdgeId> keep;
        int take = 1 + (int)(rng() % rep.st_paths.size());
        for (int j = 0; j < take; ++j) {
            const DirPath& p = rep.st_paths[rng() % rep.st_paths.size()];
            keep.insert(p.edges.begin(), p.edges.end());
        }
        DiGraph sub;
        sub.source = host.g.source;
        sub.target = host.g.target;
        for (const auto& e : host.g.edges)
            if (keep.count(e.id)) {
                sub.edges.push_back(e);
                sub.vertices.insert(e.tail);
                sub.vertices.insert(e.head);
            }
        if (sub.vertices.empty()) continue;
        Tdag subt = validate_tdag(sub);
        CHECK(is_d_embedded(subt, host.g).has_value());
    }
}

TEST_CASE("minor witnesses verify across random positive instances") {
    std::mt19937 rng(41);
    int done = 0;
    for (int i = 0; i < 60 && done < 15; ++i) {
        Tdag host = random_tdag(rng, 7, 10);
        auto m = is_d_minor(braess(), host);
        if (!m) continue;
        OpSequence w = minor_witness_from_match(braess(), host, *m);
        CHECK(verify_witness(w).ok);
        CHECK(is_isomorphic(w.claimed_result, braess().g).has_value());
        ++done;
    }
    CHECK(done > 0);
}

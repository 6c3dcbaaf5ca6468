// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion re-derives its expected values from exhaustive or
// randomized reference computations rather than trusting the engine under
// test.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tdag/embed.hpp"
#include "tdag/families.hpp"
#include "tdag/graph.hpp"
#include "tdag/io.hpp"
#include "tdag/oracle.hpp"
#include "tdag/ops.hpp"
#include "tdag/width.hpp"
#include "test_helpers.hpp"

using namespace tdag;
using namespace tdag::testutil;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
// criterion 10 is an always-on bound tracked across every graph the suite touches
long long spw_bound_checks = 0;
long long spw_bound_violations = 0;

void note_spw(const Tdag& g, int spw) {
    ++spw_bound_checks;
    if (spw > (int)g.g.vertices.size() / 2) ++spw_bound_violations;
}

void report(int n, const std::string& desc, bool ok, double secs) {
    std::printf("%s criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", n, desc.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
}

void run(int n, const std::string& desc, const std::function<bool()>& body) {
    auto t0 = Clock::now();
    bool ok = false;
    std::string extra;
    try {
        ok = body();
    } catch (const std::exception& e) {
        extra = std::string(" [exception: ") + e.what() + "]";
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(n, desc + extra, ok, secs);
}

bool criterion1() {
    Tdag b = braess();
    if (spw_value(b) != 2) return false;
    note_spw(b, 2);
    if (parallel_width(b) != 3) return false;
    std::set<std::set<EdgeId>> cuts;
    for (const auto& c : oracle_enumerate(b.g).minimal_cuts) cuts.insert(c);
    std::set<std::set<EdgeId>> expect = {{0, 1}, {3, 4}, {0, 4}, {1, 2, 3}};
    return cuts == expect;
}

bool criterion2() {
    Tdag left = junction_graph(), right = junction_split_graph();
    for (const Tdag* g : {&left, &right}) {
        if (parallel_width(*g) != 2) return false;
        int s = spw_value(*g);
        note_spw(*g, s);
        if (s != 1) return false;
    }
    if (!is_d_embedded(left, right.g).has_value()) return false;
    if (is_h_embedded(left, right).has_value()) return false;
    return true;
}

bool criterion3() {
    if (gsp_variants(2).size() != 1 || gsp_variants(3).size() != 4) return false;
    if (!is_isomorphic(gsp(2).g, braess().g).has_value()) return false;
    for (int k = 2; k <= 3; ++k) {
        for (const auto& v : gsp_variants(k)) {
            if (!spw_at_least(v, k, SpwEngine::A)) return false;
            if (!spw_at_least(v, k, SpwEngine::B)) return false;
            if (spw_at_least(v, k + 1, SpwEngine::A)) return false;
            if (spw_at_least(v, k + 1, SpwEngine::B)) return false;
            if (oracle_width(v.g).spw != k) return false;
            note_spw(v, k);
        }
    }
    return true;
}

// Exhaustive ground truth for minor containment: the set of patterns
// (as canonical forms) reachable from g by legal minor operations, memoized
// globally across hosts. Minor operations strictly reduce the edge count, so
// the recursion is well-founded.
struct MinorGroundTruth {
    std::vector<std::string> pattern_canon;          // bit index -> canonical form
    std::map<std::string, uint64_t> canon_to_bit;    // canonical form -> bit mask
    std::map<std::string, uint64_t> memo;

    uint64_t reachable_patterns(const DiGraph& g) {
        std::string c = canonical_form(g);
        auto it = memo.find(c);
        if (it != memo.end()) return it->second;
        uint64_t mask = 0;
        auto hit = canon_to_bit.find(c);
        if (hit != canon_to_bit.end()) mask |= hit->second;
        for (const auto& op : legal_minor_ops(g)) mask |= reachable_patterns(apply_minor_op(g, op));
        memo[c] = mask;
        return mask;
    }
};

bool criterion4() {
    // patterns: every TDAG with <= 4 vertices (simple, up to isomorphism)
    // plus small multigraph patterns that only arise with parallel edges
    std::vector<Tdag> patterns = enumerate_tdags(4);
    patterns.push_back(parallel_graph(2));
    patterns.push_back(parallel_graph(3));
    patterns.push_back(junction_graph());

    MinorGroundTruth gt;
    for (size_t i = 0; i < patterns.size(); ++i) {
        std::string c = canonical_form(patterns[i].g);
        gt.pattern_canon.push_back(c);
        gt.canon_to_bit[c] |= (uint64_t)1 << i;
    }

    // hosts: every TDAG with <= 6 vertices up to isomorphism, within the
    // exhaustive oracle's 12-edge guard
    std::vector<Tdag> hosts = enumerate_tdags(6, 12);
    long long mismatches = 0;
    for (const auto& host : hosts) {
        uint64_t truth = gt.reachable_patterns(host.g);
        for (size_t i = 0; i < patterns.size(); ++i) {
            bool lib = is_d_embedded(patterns[i], host.g).has_value();
            bool orc = (truth >> i) & 1;
            if (lib != orc) {
                ++mismatches;
                std::fprintf(stderr, "criterion 4 mismatch: pattern %zu host %s lib=%d oracle=%d\n", i,
                             graph_to_json(host.g).c_str(), (int)lib, (int)orc);
            }
        }
    }
    // tie the memoized ground truth back to the oracle module on small hosts
    for (const auto& host : hosts) {
        if (host.g.vertices.size() > 4) continue;
        auto closure = oracle_minor_closure(host);
        for (size_t i = 0; i < patterns.size(); ++i) {
            bool via_closure = closure.count(gt.pattern_canon[i]) > 0;
            bool via_memo = (gt.reachable_patterns(host.g) >> i) & 1;
            if (via_closure != via_memo) ++mismatches;
        }
    }
    // and spot-check the witness-returning oracle entry point
    if (!oracle_d_minor(braess(), gsp(3)).has_value()) ++mismatches;
    if (oracle_d_minor(braess(), parallel_graph(5)).has_value()) ++mismatches;
    std::fprintf(stderr, "criterion 4: %zu hosts x %zu patterns, %lld mismatches\n", hosts.size(),
                 patterns.size(), mismatches);
    return mismatches == 0;
}

bool criterion5() {
    std::mt19937 rng(1005);
    long long bad = 0;
    for (int iter = 0; iter < 200; ++iter) {
        Tdag g = random_tdag(rng, 8, 12);
        int value = 1;
        for (int k = 2; k <= 3; ++k) {
            SpwWitness wit;
            bool direct;
            try {
                direct = spw_at_least(g, k, SpwEngine::Both, &wit);  // engines A (variant minors) and B must agree
            } catch (const GraphError&) {
                ++bad;
                continue;
            }
            // the forbidden-minor side, re-derived here
            bool minor_side = false;
            for (const auto& v : gsp_variants(k))
                if (is_d_minor(v, g).has_value()) minor_side = true;
            if (direct != minor_side) ++bad;
            if (direct) {
                value = k;
                VerifyResult vr = verify_witness(wit.minor_sequence);
                if (!vr.ok) ++bad;
                if (!is_isomorphic(wit.minor_sequence.claimed_result, gsp_variant(k, wit.variant).g)
                         .has_value())
                    ++bad;
            }
        }
        note_spw(g, value);
    }
    return bad == 0;
}

bool criterion6() {
    std::mt19937 rng(1006);
    for (int i = 0; i < 10'000; ++i) {
        Tdag t = random_tdag(rng, 8, 12);
        AnyOp op = random_legal_op(rng, t);
        try {
            validate_tdag(apply_op(t.g, op));
        } catch (const GraphError&) {
            return false;
        }
    }
    return true;
}

bool criterion7() {
    std::mt19937 rng(1007);
    int done = 0;
    while (done < 1000) {
        Tdag t = random_tdag(rng, 8, 11);
        EmbedOp op = random_embed_op(rng, t);
        if (op.kind != EmbedOp::ForwardSplit && op.kind != EmbedOp::BackwardSplit) continue;
        size_t before = oracle_enumerate(t.g).st_paths.size();
        DiGraph after = apply_embed_op(t.g, op);
        size_t after_count = oracle_enumerate(after).st_paths.size();
        if (before != after_count) return false;
        ++done;
    }
    return true;
}

bool criterion8() {
    std::mt19937 rng(1008);
    std::vector<Tdag> pool = enumerate_tdags(5);
    for (int i = 0; i < 60; ++i) pool.push_back(random_tdag(rng, 7, 12));
    long long checked = 0;
    for (const auto& t : pool) {
        if (t.g.edges.size() > 12) continue;
        // the parallel sets are exactly the subsets of minimal cuts
        auto rep = oracle_enumerate(t.g);
        std::set<std::set<EdgeId>> parallel_sets;
        for (const auto& cut : rep.minimal_cuts) {
            std::vector<EdgeId> ids(cut.begin(), cut.end());
            for (unsigned long mask = 1; mask < (1ul << ids.size()); ++mask) {
                std::set<EdgeId> S;
                for (size_t j = 0; j < ids.size(); ++j)
                    if (mask & (1ul << j)) S.insert(ids[j]);
                parallel_sets.insert(S);
            }
        }
        for (const auto& S : parallel_sets) {
            ++checked;
            if (!is_concurrent(t, EdgeSet(S.begin(), S.end()))) return false;
            if (!oracle_is_concurrent(t.g, S)) return false;
        }
    }
    std::fprintf(stderr, "criterion 8: %lld parallel sets checked\n", checked);
    return checked > 0;
}

bool criterion9() {
    Tdag pat = braess();
    long long mismatches = 0, count = 0;
    for (const auto& g : enumerate_tdags(6)) {
        // the degenerate single-vertex graph has width 0 and no series-parallel
        // build; the equivalence is about graphs composed of edges
        if (g.g.edges.empty()) continue;
        bool dsp = is_series_parallel(g).has_value();
        bool no_braess = !is_d_minor(pat, g).has_value();
        int s = spw_value(g, SpwEngine::Both);
        note_spw(g, s);
        bool width_one = s == 1;
        ++count;
        if (dsp != no_braess || dsp != width_one) ++mismatches;
    }
    std::fprintf(stderr, "criterion 9: %lld graphs checked\n", count);
    return mismatches == 0 && count > 0;
}

bool criterion10() {
    std::fprintf(stderr, "criterion 10: %lld width evaluations tracked\n", spw_bound_checks);
    return spw_bound_violations == 0 && spw_bound_checks > 0;
}

bool criterion11() {
    std::mt19937 rng(1011);
    // disjoint-paths certification
    for (int iter = 0; iter < 1000; ++iter) {
        Tdag t = random_tdag(rng, 10, 13);
        std::vector<VertexId> vs(t.g.vertices.begin(), t.g.vertices.end());
        int m = 1 + (int)(rng() % 3);
        PathQuery q;
        std::set<VertexId> taken;
        bool usable = true;
        for (int i = 0; i < m && usable; ++i) {
            VertexId f = vs[rng() % vs.size()];
            VertexId to = vs[rng() % vs.size()];
            if (taken.count(f) || (to != f && taken.count(to)))
                usable = false;
            else {
                taken.insert(f);
                taken.insert(to);
                q.pairs.push_back({f, to});
            }
        }
        if (!usable) continue;
        auto fast = vertex_disjoint_paths_dag(t.g, q);
        auto slow = oracle_disjoint_paths(t.g, q);
        if (fast.has_value() != slow.has_value()) return false;
        if (fast) {
            std::set<VertexId> used;
            for (size_t i = 0; i < fast->paths.size(); ++i) {
                const DirPath& p = fast->paths[i];
                if (p.vertices.front() != q.pairs[i].first || p.vertices.back() != q.pairs[i].second)
                    return false;
                for (size_t j = 0; j < p.edges.size(); ++j) {
                    const Edge& e = t.g.edge(p.edges[j]);
                    if (e.tail != p.vertices[j] || e.head != p.vertices[j + 1]) return false;
                }
                for (VertexId v : p.vertices)
                    if (!used.insert(v).second) return false;
            }
        }
    }
    // longest-path certification on the same kind of corpus
    for (int iter = 0; iter < 300; ++iter) {
        Tdag t = random_tdag(rng, 10, 13);
        size_t best = 0;
        for (const auto& p : oracle_enumerate(t.g).st_paths) best = std::max(best, p.edges.size());
        if (longest_path(t).edges.size() != best) return false;
    }
    return true;
}

}  // namespace

int main() {
    run(1, "Braess widths and minimal cuts match the worked example", criterion1);
    run(2, "junction pair widths, d-embedding yes, h-embedding no", criterion2);
    run(3, "k-serial-parallel variants have width k by engines A, B, and oracle", criterion3);
    run(4, "d-embedding equals exhaustive minor search on all small host/pattern pairs", criterion4);
    run(5, "width decisions match variant minors and yield verified witnesses", criterion5);
    run(6, "10k random legal operations preserve TDAG validity", criterion6);
    run(7, "split steps preserve the number of s-t paths", criterion7);
    run(8, "every parallel set is concurrent on the enumerated corpus", criterion8);
    run(9, "series-parallel = no Braess minor = width 1 on all small TDAGs", criterion9);
    run(10, "width never exceeds half the vertex count", criterion10);
    run(11, "disjoint-path solver and longest path certified against oracles", criterion11);

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}

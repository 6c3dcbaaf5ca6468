#include "tdag/families.hpp"

#include <functional>

namespace tdag {

Tdag braess() {
    DiGraph g;
    g.vertices = {0, 1, 2, 3};
    g.source = 0;
    g.target = 1;
    // s=0, t=1, a=2, b=3
    g.edges = {
        {0, 0, 2},  // (s,a)
        {1, 0, 3},  // (s,b)
        {2, 2, 3},  // (a,b)
        {3, 2, 1},  // (a,t)
        {4, 3, 1},  // (b,t)
    };
    return validate_tdag(g);
}

Tdag parallel_graph(int k) {
    if (k < 1) throw GraphError(ErrKind::InvalidK, "parallel_graph requires k >= 1", {k});
    DiGraph g;
    g.vertices = {0, 1};
    g.source = 0;
    g.target = 1;
    for (int i = 0; i < k; ++i) g.edges.push_back({i, 0, 1});
    return validate_tdag(g);
}

namespace {

// Spine vertex ids: s=0, t=1, a_i=i (2<=i<=k), b_i=k+i (1<=i<=k-1).
int a_vertex(int /*k*/, int i) { return i == 1 ? 0 : i; }       // a_1 = s
int b_vertex(int k, int i) { return i == k ? 1 : k + i; }       // b_k = t

}  // namespace

Tdag gsp_variant(int k, const VariantIndex& idx) {
    if (k < 2) throw GraphError(ErrKind::InvalidK, "k-serial-parallel graphs require k >= 2", {k});
    if (idx.forward.k != k || idx.backward.k != k)
        throw GraphError(ErrKind::InvalidK, "variant trees are for a different k");

    DiGraph g;
    g.source = 0;
    g.target = 1;
    g.vertices = {0, 1};
    for (int i = 2; i <= k; ++i) g.vertices.insert(a_vertex(k, i));
    for (int i = 1; i <= k - 1; ++i) g.vertices.insert(b_vertex(k, i));

    int id = 0;
    // serial spine: (s,b_1), (a_i,b_i) for i=2..k-1, (a_k,t)
    g.edges.push_back({id++, 0, b_vertex(k, 1)});
    for (int i = 2; i <= k - 1; ++i) g.edges.push_back({id++, a_vertex(k, i), b_vertex(k, i)});
    g.edges.push_back({id++, a_vertex(k, k), 1});
    // bridges: (b_i, a_{i+1}) for i=1..k-1
    for (int i = 1; i <= k - 1; ++i) g.edges.push_back({id++, b_vertex(k, i), a_vertex(k, i + 1)});
    // forward tree over (s, a_2, ..., a_k)
    for (int i = 2; i <= k; ++i) g.edges.push_back({id++, a_vertex(k, idx.forward.parent[i]), a_vertex(k, i)});
    // backward tree over (b_1, ..., b_{k-1}, t)
    for (int i = 1; i <= k - 1; ++i) g.edges.push_back({id++, b_vertex(k, i), b_vertex(k, idx.backward.parent[i])});

    return validate_tdag(g);
}

Tdag gsp(int k) {
    VariantIndex star;
    star.forward.k = star.backward.k = k;
    star.forward.parent.assign(k + 1, 1);   // every a_i hangs off s
    star.backward.parent.assign(k + 1, k);  // every b_i feeds t
    return gsp_variant(k, star);
}

std::vector<VariantIndex> gsp_variant_indices(int k) {
    if (k < 2) throw GraphError(ErrKind::InvalidK, "k-serial-parallel graphs require k >= 2", {k});
    std::vector<std::vector<int>> fwd_trees, bwd_trees;

    std::vector<int> p(k + 1, 0);
    std::function<void(int)> gen_fwd = [&](int i) {
        if (i > k) {
            fwd_trees.push_back(p);
            return;
        }
        for (int par = 1; par < i; ++par) {
            p[i] = par;
            gen_fwd(i + 1);
        }
    };
    gen_fwd(2);

    std::vector<int> c(k + 1, 0);
    std::function<void(int)> gen_bwd = [&](int i) {
        if (i > k - 1) {
            bwd_trees.push_back(c);
            return;
        }
        for (int ch = i + 1; ch <= k; ++ch) {
            c[i] = ch;
            gen_bwd(i + 1);
        }
    };
    gen_bwd(1);

    std::vector<VariantIndex> out;
    for (const auto& f : fwd_trees)
        for (const auto& b : bwd_trees) {
            VariantIndex vi;
            vi.forward.k = vi.backward.k = k;
            vi.forward.parent = f;
            vi.backward.parent = b;
            out.push_back(vi);
        }
    return out;
}

std::vector<Tdag> gsp_variants(int k) {
    std::vector<Tdag> out;
    for (const auto& vi : gsp_variant_indices(k)) out.push_back(gsp_variant(k, vi));
    return out;
}

}  // namespace tdag

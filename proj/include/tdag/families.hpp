#pragma once

#include <vector>

#include "tdag/graph.hpp"

namespace tdag {

// Tree shape over the indexed spine vertices of a k-serial-parallel graph.
// Forward trees: parent[i] < i for i = 2..k, node 1 is the root (the source).
// Backward trees: child[i] > i for i = 1..k-1, node k is the sink (the target).
struct IncreasingTree {
    std::vector<int> parent;  // parent[i] (or child[i]) indexed from 0; see builders
    int k = 0;
};

struct VariantIndex {
    IncreasingTree forward;
    IncreasingTree backward;
};

// The 4-vertex Braess graph: edges (s,a),(s,b),(a,b),(a,t),(b,t).
// Vertex ids: s=0, a=2, b=3, t=1; edge ids 0..4 in the order above.
Tdag braess();

// Two vertices s=0, t=1 with k parallel (s,t) edges (ids 0..k-1).
Tdag parallel_graph(int k);

// The k-serial-parallel graph. Vertex ids: s=0, t=1, a_i=i (i=2..k),
// b_i=k+i (i=1..k-1). Edges: forward star (s,a_i) i=2..k, backward star
// (b_i,t) i=1..k-1, spine (s,b_1),(a_i,b_i) i=2..k-1,(a_k,t), and bridges
// (b_i,a_{i+1}) i=1..k-1.
Tdag gsp(int k);

// A specific variant: the forward star is replaced by the given forward tree
// over (s,a_2,...,a_k) and the backward star by the given backward tree over
// (b_1,...,b_{k-1},t); the spine and bridges are kept.
Tdag gsp_variant(int k, const VariantIndex& idx);

// All ((k-1)!)^2 variants, in lexicographic order of the parent arrays
// (forward tree major).
std::vector<VariantIndex> gsp_variant_indices(int k);
std::vector<Tdag> gsp_variants(int k);

}  // namespace tdag

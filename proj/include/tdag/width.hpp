#pragma once

#include <optional>
#include <set>
#include <vector>

#include "tdag/disjoint_paths.hpp"
#include "tdag/embed.hpp"
#include "tdag/families.hpp"
#include "tdag/graph.hpp"
#include "tdag/ops.hpp"

namespace tdag {

using EdgeSet = std::set<EdgeId>;

// Vertex-disjoint forward tree (source -> all tails of S) and backward tree
// (all heads of S -> target), each given by its set of graph edge ids.
struct CutCertificate {
    std::set<EdgeId> forward_tree;
    std::set<EdgeId> backward_tree;
};

// A set is serial iff all its edges lie on one simple source-target path.
// Tails are topologically sorted; sets with a repeated tail or head, or whose
// sorted order is not chainable, are rejected; otherwise the segments
// source->a_1, b_i->a_{i+1}, b_k->target are filled in (zero-length allowed)
// and the concatenated simple path is returned.
std::optional<DirPath> is_serial(const Tdag& g, const EdgeSet& S);

// A set is concurrent iff every edge e = (a,b) in S lies on a source-target
// path avoiding the rest of S: paths source->a and b->target must survive in
// the graph minus S \ {e}.
bool is_concurrent(const Tdag& g, const EdgeSet& S);

// A set is parallel iff it is contained in some minimal source-target cut,
// equivalently iff vertex-disjoint forward/backward trees as above exist.
// Search: enumerate candidate junction sets (at most |S|-1 branch vertices
// per tree) and tree shapes over junctions plus tails (resp. heads), then
// realize all tree edges with one globally vertex-disjoint routing call.
std::optional<CutCertificate> is_parallel(const Tdag& g, const EdgeSet& S);

// One maximum-length source-target path (ties broken by lowest edge id)
// via dynamic programming over the topological order.
DirPath longest_path(const Tdag& g);

// True iff a possibly-cyclic 2-terminal graph has a simple source-target
// path of length >= k: enumerate length-k simple prefixes from the source
// and try to complete each to the target avoiding the prefix.
bool max_serial_general(const DiGraph& g, int k);

// PW(g) >= k iff the k-edge parallel graph is a d-minor of g.
bool parallel_width_at_least(const Tdag& g, int k);
int parallel_width(const Tdag& g);

// Engine A: forbidden-minor search over the k-serial-parallel variants.
// Engine B: direct search over source-target paths and k-subsets of their
// edges, testing is_parallel. Both engines must agree when both run.
enum class SpwEngine { A, B, Both };

struct SpwWitness {
    DirPath serial_path;    // engine-B artifact (empty when only engine A ran)
    EdgeSet set;            // the serial-parallel set found
    CutCertificate cut_cert;
    bool has_set_certificate = false;  // serial_path/set/cut_cert populated
    OpSequence minor_sequence;  // replayable reduction to the named variant
    VariantIndex variant;
};

// Decision: SPW(g) >= k. Fills *wit on success when requested.
// Throws EngineDisagreement if the selected engines disagree.
bool spw_at_least(const Tdag& g, int k, SpwEngine eng = SpwEngine::Both, SpwWitness* wit = nullptr);

// Value mode: scans k upward (bounded by floor(|V|/2)).
int spw_value(const Tdag& g, SpwEngine eng = SpwEngine::Both, SpwWitness* wit = nullptr);

// Constructive extraction: given a set that is serial via `path` and parallel
// via `cert`, produces a verified d-minor operation sequence from g down to
// the k-serial-parallel variant determined by the junction-tree shapes.
// Throws PreconditionViolated if the inputs do not certify a serial-parallel
// set, InvalidK for |S| < 2.
SpwWitness extract_spw_minor_witness(const Tdag& g, const EdgeSet& S, const DirPath& path,
                                     const CutCertificate& cert);

// Series-parallel decomposition tree; leaves are original edges.
struct SpNode {
    enum Tag { Leaf, Series, Parallel } tag = Leaf;
    EdgeId edge = -1;         // Leaf only
    int left = -1, right = -1;  // children (indices into nodes)
};
struct SpDecomposition {
    std::vector<SpNode> nodes;
    int root = -1;
};

// Reduction algorithm: repeatedly merge parallel duplicate edges and
// series-contract internal vertices with indegree = outdegree = 1; succeeds
// iff the graph reduces to a single source-target edge.
std::optional<SpDecomposition> is_series_parallel(const Tdag& g);

}  // namespace tdag

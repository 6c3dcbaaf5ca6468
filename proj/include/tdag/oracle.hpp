#pragma once

#include <optional>
#include <set>
#include <vector>

#include "tdag/disjoint_paths.hpp"
#include "tdag/graph.hpp"
#include "tdag/ops.hpp"

namespace tdag {

// Exhaustive reference engines, trustworthy at desk scale only. All size
// guards are hard errors (TooLarge), never silent truncation.

struct EnumerationReport {
    std::vector<DirPath> st_paths;            // all simple source-target paths
    std::vector<std::set<EdgeId>> minimal_cuts;  // all minimal source-target cuts
};

struct WidthReport {
    int pw = 0;
    int spw = 0;
    int max_serial = 0;
    int max_concurrent = 0;
};

// DFS path enumeration + 2^|E| subset scan with minimality filter.
// Guard: |E| <= 20.
EnumerationReport oracle_enumerate(const DiGraph& g);

// pw = max minimal-cut size; spw = max |path-edges ∩ minimal cut|;
// max_serial = longest path length; max_concurrent by subset scan.
WidthReport oracle_width(const DiGraph& g);

// S is contained in some minimal cut.
bool oracle_is_parallel(const DiGraph& g, const std::set<EdgeId>& S);

// Each edge of S lies on a simple s-t path meeting S only at that edge.
bool oracle_is_concurrent(const DiGraph& g, const std::set<EdgeId>& S);

// S is contained in the edge set of a single simple s-t path.
bool oracle_is_serial(const DiGraph& g, const std::set<EdgeId>& S);

// Literal breadth-first search over graphs reachable from host by legal minor
// operations, deduplicated by canonical form, accepting on isomorphism with
// the pattern. Guard: host <= 8 vertices and <= 12 edges.
std::optional<OpSequence> oracle_d_minor(const Tdag& pattern, const Tdag& host);

// All canonical forms reachable from host by minor operations (same guard).
// Shared by oracle_d_minor and the exhaustive test suites.
std::set<std::string> oracle_minor_closure(const Tdag& host);

// Exhaustive backtracking over simple path tuples.
std::optional<PathSolution> oracle_disjoint_paths(const DiGraph& g, const PathQuery& q);

}  // namespace tdag

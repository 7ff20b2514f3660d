#pragma once

#include "spcp/pattern_graph.hpp"

#include <string>
#include <vector>

namespace spcp {

/// Verdict on the target polytope condition: every nonempty vertex subset X
/// must satisfy sum_{v in X} Lhat_v < 2 sum_{e in E(X)} theta(e).
///
/// method == "exhaustive": worst_slack is the exact minimum slack over all
/// nonempty subsets and witness attains it (lexicographically smallest on
/// ties).
///
/// method == "flow": the verdict is feasible-with-margin-epsilon (sufficient,
/// not exactly equivalent to the strict condition). When infeasible, witness
/// comes from the min-cut and its slack is at most epsilon * |E(witness)|;
/// when feasible, witness is the full vertex set. In both cases worst_slack
/// is the recomputed slack of the returned witness.
struct FeasibilityReport {
    bool feasible = false;
    double worst_slack = 0.0;
    std::vector<int> witness;  // vertex indices, ascending
    std::string method;
};

/// 2 sum_{e in E(X)} theta(e) - sum_{v in X} Lhat_v for a vertex subset X.
double subset_slack(const PatternGraph& graph, const std::vector<int>& X);

/// Exact check by enumerating all 2^N - 1 nonempty subsets. Refuses N > 24;
/// use check_flow for larger instances.
FeasibilityReport check_exhaustive(const PatternGraph& graph);

/// Max-flow relaxation: a transportation network with source -> v arcs of
/// capacity Lhat_v, v -> e arcs of unbounded capacity for each incidence,
/// and e -> sink arcs of capacity 2 theta(e) - epsilon. Feasible iff the
/// max flow saturates every source arc. epsilon > 0 is the strictness margin.
FeasibilityReport check_flow(const PatternGraph& graph, double epsilon);

}  // namespace spcp

#include "spcp/feasibility.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>

namespace spcp {

namespace {

std::vector<int> mask_to_subset(std::uint32_t mask) {
    std::vector<int> subset;
    while (mask != 0) {
        const int v = std::countr_zero(mask);
        subset.push_back(v);
        mask &= mask - 1;
    }
    return subset;
}

// Lexicographic order on the ascending index sequences of two subsets.
bool subset_lex_less(std::uint32_t a, std::uint32_t b) {
    while (a != 0 && b != 0) {
        const int la = std::countr_zero(a);
        const int lb = std::countr_zero(b);
        if (la != lb) return la < lb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

// Residual-graph max flow (Dinic) on double capacities.
class MaxFlowNetwork {
public:
    explicit MaxFlowNetwork(int node_count) : head_(node_count) {}

    void add_arc(int from, int to, double capacity) {
        head_[from].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({to, capacity});
        head_[to].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({from, 0.0});
    }

    double max_flow(int source, int sink) {
        double total = 0.0;
        while (bfs(source, sink)) {
            iter_.assign(head_.size(), 0);
            while (true) {
                const double pushed = dfs(source, sink, std::numeric_limits<double>::max());
                if (pushed <= kResidualEps) break;
                total += pushed;
            }
        }
        return total;
    }

    /// Nodes reachable from source in the residual graph; call after max_flow.
    std::vector<char> residual_reachable(int source) const {
        std::vector<char> seen(head_.size(), 0);
        std::queue<int> queue;
        queue.push(source);
        seen[source] = 1;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop();
            for (int a : head_[u]) {
                if (arcs_[a].residual > kResidualEps && !seen[arcs_[a].to]) {
                    seen[arcs_[a].to] = 1;
                    queue.push(arcs_[a].to);
                }
            }
        }
        return seen;
    }

private:
    static constexpr double kResidualEps = 1e-14;

    struct Arc {
        int to;
        double residual;
    };

    bool bfs(int source, int sink) {
        level_.assign(head_.size(), -1);
        std::queue<int> queue;
        queue.push(source);
        level_[source] = 0;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop();
            for (int a : head_[u]) {
                if (arcs_[a].residual > kResidualEps && level_[arcs_[a].to] < 0) {
                    level_[arcs_[a].to] = level_[u] + 1;
                    queue.push(arcs_[a].to);
                }
            }
        }
        return level_[sink] >= 0;
    }

    double dfs(int u, int sink, double limit) {
        if (u == sink) return limit;
        for (int& i = iter_[u]; i < static_cast<int>(head_[u].size()); ++i) {
            const int a = head_[u][i];
            Arc& arc = arcs_[a];
            if (arc.residual > kResidualEps && level_[arc.to] == level_[u] + 1) {
                const double pushed = dfs(arc.to, sink, std::min(limit, arc.residual));
                if (pushed > kResidualEps) {
                    arc.residual -= pushed;
                    arcs_[a ^ 1].residual += pushed;
                    return pushed;
                }
            }
        }
        return 0.0;
    }

    std::vector<std::vector<int>> head_;
    std::vector<Arc> arcs_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

}  // namespace

double subset_slack(const PatternGraph& graph, const std::vector<int>& X) {
    double target_sum = 0.0;
    for (int v : X) {
        if (v < 0 || v >= graph.vertex_count()) {
            throw std::invalid_argument("subset_slack: vertex index out of range");
        }
        target_sum += graph.targets()[v];
    }
    double angle_sum = 0.0;
    for (int e : graph.boundary_edge_set(X)) angle_sum += graph.edges()[e].theta;
    return 2.0 * angle_sum - target_sum;
}

FeasibilityReport check_exhaustive(const PatternGraph& graph) {
    ensure_valid(graph);
    const int n = graph.vertex_count();
    if (n > 24) {
        throw std::invalid_argument(
            "check_exhaustive: refusing to enumerate subsets for more than 24 vertices; use "
            "check_flow");
    }
    const int m = graph.edge_count();

    // Gray-code walk over all subsets, maintaining per-edge endpoint counts,
    // the covered-angle sum and the target sum incrementally.
    std::vector<int> endpoint_count(m, 0);
    double angle_sum = 0.0;
    double target_sum = 0.0;
    std::uint32_t current = 0;

    double best_slack = std::numeric_limits<double>::infinity();
    std::uint32_t best_mask = 0;

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < total; ++i) {
        const int v = std::countr_zero(i);
        const std::uint32_t bit = std::uint32_t{1} << v;
        const bool adding = (current & bit) == 0;
        current ^= bit;
        target_sum += adding ? graph.targets()[v] : -graph.targets()[v];
        for (int e : graph.incident(v)) {
            if (adding) {
                if (endpoint_count[e]++ == 0) angle_sum += graph.edges()[e].theta;
            } else {
                if (--endpoint_count[e] == 0) angle_sum -= graph.edges()[e].theta;
            }
        }
        const double slack = 2.0 * angle_sum - target_sum;
        if (slack < best_slack ||
            (slack == best_slack && subset_lex_less(current, best_mask))) {
            best_slack = slack;
            best_mask = current;
        }
    }

    FeasibilityReport report;
    report.feasible = best_slack > 0.0;
    report.worst_slack = best_slack;
    report.witness = mask_to_subset(best_mask);
    report.method = "exhaustive";
    return report;
}

FeasibilityReport check_flow(const PatternGraph& graph, double epsilon) {
    ensure_valid(graph);
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("check_flow: epsilon must be > 0");
    }
    const int n = graph.vertex_count();
    const int m = graph.edge_count();
    const int source = 0;
    const int sink = 1 + n + m;
    MaxFlowNetwork network(n + m + 2);

    double demand = 0.0;
    for (int v = 0; v < n; ++v) {
        network.add_arc(source, 1 + v, graph.targets()[v]);
        demand += graph.targets()[v];
    }
    const double unbounded = 2.0 * demand + 1.0;
    for (int e = 0; e < m; ++e) {
        const auto [u, w] = graph.endpoint_indices()[e];
        network.add_arc(1 + u, 1 + n + e, unbounded);
        network.add_arc(1 + w, 1 + n + e, unbounded);
        network.add_arc(1 + n + e, sink, std::max(0.0, 2.0 * graph.edges()[e].theta - epsilon));
    }

    const double flow = network.max_flow(source, sink);
    const bool saturated = demand - flow <= 1e-12 * (1.0 + demand);

    FeasibilityReport report;
    report.method = "flow";
    report.feasible = saturated;
    if (saturated) {
        report.witness.resize(n);
        for (int v = 0; v < n; ++v) report.witness[v] = v;
    } else {
        const std::vector<char> reachable = network.residual_reachable(source);
        for (int v = 0; v < n; ++v) {
            if (reachable[1 + v]) report.witness.push_back(v);
        }
    }
    report.worst_slack = subset_slack(graph, report.witness);
    return report;
}

}  // namespace spcp

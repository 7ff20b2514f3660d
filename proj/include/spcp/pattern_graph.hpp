#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace spcp {

/// One undirected edge of the incidence structure. Endpoints are vertex ids;
/// parallel edges are distinct entries with their own id. theta is the
/// intersection angle of the two circles, in (0, pi/2].
struct PatternEdge {
    std::string id;
    std::string u;
    std::string w;
    double theta = 0.0;
};

/// Combinatorial input of a circle-pattern problem: vertices in a fixed order
/// (which fixes the coordinate order of every vector elsewhere), edges with
/// intersection angles, per-vertex prescribed total geodesic curvature, and
/// optional face boundaries given as cyclic edge-id sequences.
///
/// Construction is permissive: unknown endpoints, bad angles and missing
/// targets are representable and reported by validate(). Operations that need
/// a well-formed graph throw on the first violation instead.
///
/// Immutable after construction; all queries are pure and thread-safe.
class PatternGraph {
public:
    PatternGraph() = default;
    PatternGraph(std::vector<std::string> vertices, std::vector<PatternEdge> edges,
                 std::vector<double> targets,
                 std::vector<std::vector<std::string>> face_cycles = {});

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int face_count() const { return static_cast<int>(face_cycles_.size()); }

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<PatternEdge>& edges() const { return edges_; }
    const Eigen::VectorXd& targets() const { return targets_; }
    const std::vector<std::vector<std::string>>& face_cycles() const { return face_cycles_; }

    /// Resolved endpoint indices per edge; -1 marks an undeclared endpoint.
    const std::vector<std::pair<int, int>>& endpoint_indices() const { return ends_; }
    /// Resolved edge indices per face; -1 marks an unknown edge id.
    const std::vector<std::vector<int>>& face_edge_indices() const { return faces_; }

    int vertex_index(const std::string& id) const;  // -1 if unknown
    int edge_index(const std::string& id) const;    // -1 if unknown

    /// Edge indices incident to vertex v, in input edge order, with
    /// multiplicity for parallel edges.
    const std::vector<int>& incident(int v) const;

    /// Edge ids incident to the named vertex. Throws std::invalid_argument on
    /// an unknown id.
    std::vector<std::string> incident_edges(const std::string& vertex_id) const;

    /// E(X): indices of edges with at least one endpoint in X (ascending).
    /// Throws std::invalid_argument on an out-of-range vertex index.
    std::vector<int> boundary_edge_set(const std::vector<int>& X) const;
    std::vector<int> boundary_edge_set(const std::vector<std::string>& ids) const;

    const std::vector<std::string>& duplicate_vertex_ids() const { return duplicate_vertices_; }
    const std::vector<std::string>& duplicate_edge_ids() const { return duplicate_edges_; }

private:
    std::vector<std::string> vertices_;
    std::vector<PatternEdge> edges_;
    Eigen::VectorXd targets_;
    std::vector<std::vector<std::string>> face_cycles_;

    std::vector<std::pair<int, int>> ends_;
    std::vector<std::vector<int>> faces_;
    std::vector<std::vector<int>> incident_;
    std::unordered_map<std::string, int> vertex_map_;
    std::unordered_map<std::string, int> edge_map_;
    std::vector<std::string> duplicate_vertices_;
    std::vector<std::string> duplicate_edges_;
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool valid() const { return errors.empty(); }
};

/// Checks every structural invariant: declared endpoints, no self-loops,
/// theta in (0, pi/2] (theta == pi/2 yields a warning: the flow's convergence
/// guarantee assumes the open interval), positive finite targets, no isolated
/// vertices, and, when faces are present, that every edge appears in exactly
/// two face boundaries counted with multiplicity and that the Euler
/// characteristic V - M + F equals 2 - 2g for some integer g >= 0.
ValidationReport validate(const PatternGraph& graph);

/// Throws std::invalid_argument with the first validation error; used by
/// operations whose precondition is a valid graph.
void ensure_valid(const PatternGraph& graph);

}  // namespace spcp

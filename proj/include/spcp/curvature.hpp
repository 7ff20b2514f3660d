#pragma once

#include "spcp/pattern_graph.hpp"
#include "spcp/vectors.hpp"

#include <vector>

#include <Eigen/Core>

namespace spcp {

/// Per-vertex totals assembled from the incident bigons: total geodesic
/// curvature L_v, cone angle alpha_v (sum of the incident half-angles times
/// two), circle length l_v = alpha_v sin r_v, and, when faces are present,
/// the cone angle at each face center, sum over the boundary of (pi - theta).
struct CurvatureState {
    Eigen::VectorXd total_curvature;  // L_v = alpha_v cos r_v
    Eigen::VectorXd cone_angle;       // alpha_v
    Eigen::VectorXd circle_length;    // l_v = alpha_v sin r_v
    std::vector<double> face_cone_angle;
};

/// Jacobian dL/dK stored as per-edge cross terms plus the diagonal. Symmetric
/// positive definite at every interior point; off-diagonal entries are sums
/// of negative per-edge cross terms.
class CurvatureJacobian {
public:
    CurvatureJacobian(Eigen::VectorXd diag, std::vector<double> edge_cross,
                      std::vector<std::pair<int, int>> edge_ends);

    int size() const { return static_cast<int>(diag_.size()); }
    const Eigen::VectorXd& diagonal() const { return diag_; }
    const std::vector<double>& edge_cross_terms() const { return edge_cross_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd dense() const;

    /// Smallest eigenvalue via a dense symmetric eigensolve.
    double smallest_eigenvalue() const;

private:
    Eigen::VectorXd diag_;
    std::vector<double> edge_cross_;
    std::vector<std::pair<int, int>> edge_ends_;
};

/// Evaluates all per-vertex quantities at the point k. Throws on dimension
/// mismatch, non-finite entries, or an invalid graph.
CurvatureState curvatures(const PatternGraph& graph, const KVector& k);

/// Repeated-evaluation workhorse: validates the graph once, precomputes the
/// per-edge trig, and then evaluates L(K) and segment energies without any
/// further checks. The graph must outlive the evaluator.
class CurvatureEvaluator {
public:
    explicit CurvatureEvaluator(const PatternGraph& graph);

    const PatternGraph& graph() const { return *graph_; }

    /// L(K). No validation; k must have one finite entry per vertex.
    Eigen::VectorXd total_curvature(const Eigen::VectorXd& k) const;

    /// E(to) - E(from) by quadrature of the curvature 1-form along the
    /// straight segment, minus the target term.
    double segment_energy(const Eigen::VectorXd& from, const Eigen::VectorXd& to,
                          int quadrature_nodes) const;

private:
    const PatternGraph* graph_;
    std::vector<double> sin_theta_;
    std::vector<double> cos_theta_;
};

CurvatureJacobian jacobian(const PatternGraph& graph, const KVector& k);

/// Potential difference E(k) - E(reference): the line integral of the closed
/// 1-form sum_e (L1 dK_u + L2 dK_w) along the straight segment from reference
/// to k, by Gauss-Legendre quadrature, minus the linear target term. Only
/// differences of the potential are defined; the gradient is L(K) - Lhat.
double potential(const PatternGraph& graph, const KVector& k, const KVector& reference,
                 int quadrature_nodes = 48);

/// Same, against the default reference K = 0 (all radii pi/4).
double potential(const PatternGraph& graph, const KVector& k, int quadrature_nodes = 48);

}  // namespace spcp

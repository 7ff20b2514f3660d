#include "spcp/curvature.hpp"

#include "spcp/bigon.hpp"
#include "spcp/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace spcp {

namespace {

void check_state(const PatternGraph& graph, const KVector& k, const char* where) {
    ensure_valid(graph);
    if (k.values.size() != graph.vertex_count()) {
        throw std::invalid_argument(std::string(where) + ": K has dimension " +
                                    std::to_string(k.values.size()) + ", graph has " +
                                    std::to_string(graph.vertex_count()) + " vertices");
    }
    if (!k.values.allFinite()) {
        throw std::invalid_argument(std::string(where) + ": K has non-finite entries");
    }
}

struct EdgeTrigCache {
    std::vector<double> sin_theta;
    std::vector<double> cos_theta;
};

EdgeTrigCache edge_trig(const PatternGraph& graph) {
    EdgeTrigCache cache;
    const int m = graph.edge_count();
    cache.sin_theta.resize(m);
    cache.cos_theta.resize(m);
    for (int e = 0; e < m; ++e) {
        cache.sin_theta[e] = std::sin(graph.edges()[e].theta);
        cache.cos_theta[e] = std::cos(graph.edges()[e].theta);
    }
    return cache;
}

std::vector<CircleTrig> vertex_trig(const Eigen::VectorXd& k) {
    std::vector<CircleTrig> trig(k.size());
    for (Eigen::Index v = 0; v < k.size(); ++v) trig[v] = circle_trig_from_k(k[v]);
    return trig;
}

}  // namespace

CurvatureJacobian::CurvatureJacobian(Eigen::VectorXd diag, std::vector<double> edge_cross,
                                     std::vector<std::pair<int, int>> edge_ends)
    : diag_(std::move(diag)), edge_cross_(std::move(edge_cross)), edge_ends_(std::move(edge_ends)) {}

Eigen::VectorXd CurvatureJacobian::apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = diag_.cwiseProduct(x);
    for (std::size_t e = 0; e < edge_cross_.size(); ++e) {
        const auto [u, w] = edge_ends_[e];
        y[u] += edge_cross_[e] * x[w];
        y[w] += edge_cross_[e] * x[u];
    }
    return y;
}

Eigen::MatrixXd CurvatureJacobian::dense() const {
    Eigen::MatrixXd m = diag_.asDiagonal();
    for (std::size_t e = 0; e < edge_cross_.size(); ++e) {
        const auto [u, w] = edge_ends_[e];
        m(u, w) += edge_cross_[e];
        m(w, u) += edge_cross_[e];
    }
    return m;
}

double CurvatureJacobian::smallest_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

CurvatureState curvatures(const PatternGraph& graph, const KVector& k) {
    check_state(graph, k, "curvatures");
    const int n = graph.vertex_count();
    const int m = graph.edge_count();
    const auto trig = vertex_trig(k.values);
    const auto theta = edge_trig(graph);

    CurvatureState state;
    state.total_curvature = Eigen::VectorXd::Zero(n);
    state.cone_angle = Eigen::VectorXd::Zero(n);
    for (int e = 0; e < m; ++e) {
        const auto [u, w] = graph.endpoint_indices()[e];
        const BigonMeasurement b = measure_trig(trig[u], trig[w], theta.sin_theta[e],
                                                theta.cos_theta[e], graph.edges()[e].theta);
        state.total_curvature[u] += b.L1;
        state.total_curvature[w] += b.L2;
        state.cone_angle[u] += 2.0 * b.beta1;
        state.cone_angle[w] += 2.0 * b.beta2;
    }
    state.circle_length.resize(n);
    for (int v = 0; v < n; ++v) state.circle_length[v] = state.cone_angle[v] * trig[v].sin_r;

    state.face_cone_angle.reserve(graph.face_count());
    for (const auto& face : graph.face_edge_indices()) {
        double cone = 0.0;
        for (int e : face) cone += M_PI - graph.edges()[e].theta;
        state.face_cone_angle.push_back(cone);
    }
    return state;
}

CurvatureJacobian jacobian(const PatternGraph& graph, const KVector& k) {
    check_state(graph, k, "jacobian");
    const int n = graph.vertex_count();
    const int m = graph.edge_count();
    const auto trig = vertex_trig(k.values);
    const auto theta = edge_trig(graph);

    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    std::vector<double> cross(m);
    std::vector<std::pair<int, int>> ends(m);
    for (int e = 0; e < m; ++e) {
        const auto [u, w] = graph.endpoint_indices()[e];
        const BigonMeasurement b = measure_trig(trig[u], trig[w], theta.sin_theta[e],
                                                theta.cos_theta[e], graph.edges()[e].theta);
        diag[u] += b.dL1_dK1;
        diag[w] += b.dL2_dK2;
        cross[e] = b.dL1_dK2;
        ends[e] = {u, w};
    }
    return CurvatureJacobian(std::move(diag), std::move(cross), std::move(ends));
}

CurvatureEvaluator::CurvatureEvaluator(const PatternGraph& graph) : graph_(&graph) {
    ensure_valid(graph);
    const auto theta = edge_trig(graph);
    sin_theta_ = std::move(theta.sin_theta);
    cos_theta_ = std::move(theta.cos_theta);
}

Eigen::VectorXd CurvatureEvaluator::total_curvature(const Eigen::VectorXd& k) const {
    const int m = graph_->edge_count();
    const auto trig = vertex_trig(k);
    Eigen::VectorXd total = Eigen::VectorXd::Zero(graph_->vertex_count());
    for (int e = 0; e < m; ++e) {
        const auto [u, w] = graph_->endpoint_indices()[e];
        const BigonMeasurement b =
            measure_trig(trig[u], trig[w], sin_theta_[e], cos_theta_[e], graph_->edges()[e].theta);
        total[u] += b.L1;
        total[w] += b.L2;
    }
    return total;
}

double CurvatureEvaluator::segment_energy(const Eigen::VectorXd& from, const Eigen::VectorXd& to,
                                          int quadrature_nodes) const {
    const Eigen::VectorXd delta = to - from;
    if (delta.isZero(0.0)) return 0.0;
    const QuadratureRule& rule = gauss_legendre(quadrature_nodes);
    double line_integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = 0.5 * (1.0 + rule.nodes[i]);
        line_integral += 0.5 * rule.weights[i] * total_curvature(from + s * delta).dot(delta);
    }
    return line_integral - graph_->targets().dot(delta);
}

double potential(const PatternGraph& graph, const KVector& k, const KVector& reference,
                 int quadrature_nodes) {
    check_state(graph, k, "potential");
    if (reference.values.size() != k.values.size()) {
        throw std::invalid_argument("potential: reference dimension mismatch");
    }
    if (!reference.values.allFinite()) {
        throw std::invalid_argument("potential: reference has non-finite entries");
    }
    if (quadrature_nodes < 1) {
        throw std::invalid_argument("potential: quadrature node count must be >= 1");
    }
    const CurvatureEvaluator evaluator(graph);
    return evaluator.segment_energy(reference.values, k.values, quadrature_nodes);
}

double potential(const PatternGraph& graph, const KVector& k, int quadrature_nodes) {
    KVector zero;
    zero.values = Eigen::VectorXd::Zero(k.values.size());
    return potential(graph, k, zero, quadrature_nodes);
}

}  // namespace spcp

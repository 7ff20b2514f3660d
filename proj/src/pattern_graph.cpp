#include "spcp/pattern_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spcp {

PatternGraph::PatternGraph(std::vector<std::string> vertices, std::vector<PatternEdge> edges,
                           std::vector<double> targets,
                           std::vector<std::vector<std::string>> face_cycles)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      face_cycles_(std::move(face_cycles)) {
    targets_.resize(static_cast<Eigen::Index>(vertices_.size()));
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        targets_[static_cast<Eigen::Index>(i)] =
            i < targets.size() ? targets[i] : std::numeric_limits<double>::quiet_NaN();
    }

    vertex_map_.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (!vertex_map_.emplace(vertices_[i], static_cast<int>(i)).second) {
            duplicate_vertices_.push_back(vertices_[i]);
        }
    }
    edge_map_.reserve(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (!edge_map_.emplace(edges_[i].id, static_cast<int>(i)).second) {
            duplicate_edges_.push_back(edges_[i].id);
        }
    }

    ends_.resize(edges_.size());
    incident_.resize(vertices_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const int ui = vertex_index(edges_[e].u);
        const int wi = vertex_index(edges_[e].w);
        ends_[e] = {ui, wi};
        if (ui >= 0) incident_[ui].push_back(static_cast<int>(e));
        if (wi >= 0 && wi != ui) incident_[wi].push_back(static_cast<int>(e));
    }

    faces_.resize(face_cycles_.size());
    for (std::size_t f = 0; f < face_cycles_.size(); ++f) {
        faces_[f].reserve(face_cycles_[f].size());
        for (const auto& id : face_cycles_[f]) faces_[f].push_back(edge_index(id));
    }
}

int PatternGraph::vertex_index(const std::string& id) const {
    auto it = vertex_map_.find(id);
    return it == vertex_map_.end() ? -1 : it->second;
}

int PatternGraph::edge_index(const std::string& id) const {
    auto it = edge_map_.find(id);
    return it == edge_map_.end() ? -1 : it->second;
}

const std::vector<int>& PatternGraph::incident(int v) const {
    if (v < 0 || v >= vertex_count()) {
        throw std::invalid_argument("incident: vertex index out of range");
    }
    return incident_[v];
}

std::vector<std::string> PatternGraph::incident_edges(const std::string& vertex_id) const {
    const int v = vertex_index(vertex_id);
    if (v < 0) throw std::invalid_argument("incident_edges: unknown vertex id '" + vertex_id + "'");
    std::vector<std::string> out;
    out.reserve(incident_[v].size());
    for (int e : incident_[v]) out.push_back(edges_[e].id);
    return out;
}

std::vector<int> PatternGraph::boundary_edge_set(const std::vector<int>& X) const {
    std::vector<char> in_x(vertices_.size(), 0);
    for (int v : X) {
        if (v < 0 || v >= vertex_count()) {
            throw std::invalid_argument("boundary_edge_set: vertex index out of range");
        }
        in_x[v] = 1;
    }
    std::vector<int> out;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto [u, w] = ends_[e];
        if ((u >= 0 && in_x[u]) || (w >= 0 && in_x[w])) out.push_back(static_cast<int>(e));
    }
    return out;
}

std::vector<int> PatternGraph::boundary_edge_set(const std::vector<std::string>& ids) const {
    std::vector<int> X;
    X.reserve(ids.size());
    for (const auto& id : ids) {
        const int v = vertex_index(id);
        if (v < 0) throw std::invalid_argument("boundary_edge_set: unknown vertex id '" + id + "'");
        X.push_back(v);
    }
    return boundary_edge_set(X);
}

ValidationReport validate(const PatternGraph& graph) {
    ValidationReport report;
    auto error = [&report](std::string msg) { report.errors.push_back(std::move(msg)); };

    if (graph.vertex_count() < 1) error("graph has no vertices");
    if (graph.edge_count() < 1) error("graph has no edges");
    for (const auto& id : graph.duplicate_vertex_ids()) error("duplicate vertex id '" + id + "'");
    for (const auto& id : graph.duplicate_edge_ids()) error("duplicate edge id '" + id + "'");

    const auto& edges = graph.edges();
    const auto& ends = graph.endpoint_indices();
    for (int e = 0; e < graph.edge_count(); ++e) {
        const auto& edge = edges[e];
        if (ends[e].first < 0) {
            error("edge '" + edge.id + "': unknown endpoint '" + edge.u + "'");
        }
        if (ends[e].second < 0) {
            error("edge '" + edge.id + "': unknown endpoint '" + edge.w + "'");
        }
        if (ends[e].first >= 0 && ends[e].first == ends[e].second) {
            error("edge '" + edge.id + "': self-loop (endpoints must be distinct circles)");
        }
        if (!std::isfinite(edge.theta) || edge.theta <= 0.0 || edge.theta > M_PI_2) {
            error("edge '" + edge.id + "': theta out of (0, pi/2]");
        } else if (edge.theta == M_PI_2) {
            report.warnings.push_back("edge '" + edge.id +
                                      "': theta = pi/2 is accepted, but convergence of the "
                                      "flow is only guaranteed for theta < pi/2");
        }
    }

    const auto& targets = graph.targets();
    for (int v = 0; v < graph.vertex_count(); ++v) {
        if (!std::isfinite(targets[v]) || targets[v] <= 0.0) {
            error("vertex '" + graph.vertices()[v] + "': target curvature missing or not > 0");
        }
        if (graph.incident(v).empty()) {
            error("vertex '" + graph.vertices()[v] +
                  "': isolated (its total curvature is identically 0 and can never reach a "
                  "positive target)");
        }
    }

    if (graph.face_count() > 0) {
        std::vector<int> appearances(graph.edge_count(), 0);
        const auto& faces = graph.face_edge_indices();
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (faces[f].empty()) error("face " + std::to_string(f) + ": empty boundary");
            for (std::size_t j = 0; j < faces[f].size(); ++j) {
                const int e = faces[f][j];
                if (e < 0) {
                    error("face " + std::to_string(f) + ": unknown edge id '" +
                          graph.face_cycles()[f][j] + "'");
                } else {
                    ++appearances[e];
                }
            }
        }
        for (int e = 0; e < graph.edge_count(); ++e) {
            if (appearances[e] != 2) {
                error("edge '" + graph.edges()[e].id + "': appears in " +
                      std::to_string(appearances[e]) + " face boundaries, expected 2");
            }
        }
        const int chi = graph.vertex_count() - graph.edge_count() + graph.face_count();
        if (chi > 2 || (2 - chi) % 2 != 0) {
            error("Euler characteristic V - M + F = " + std::to_string(chi) +
                  " is not 2 - 2g for an integer g >= 0");
        }
    }

    return report;
}

void ensure_valid(const PatternGraph& graph) {
    const ValidationReport report = validate(graph);
    if (!report.valid()) {
        throw std::invalid_argument("invalid pattern graph: " + report.errors.front());
    }
}

}  // namespace spcp

#include "spcp/bigon.hpp"
#include "spcp/curvature.hpp"
#include "spcp/feasibility.hpp"
#include "spcp/io.hpp"
#include "spcp/pattern_graph.hpp"
#include "spcp/solver.hpp"
#include "spcp/vectors.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace spcp;

namespace {

KVector as_k(const Eigen::VectorXd& values) { return KVector{values}; }
RadiusVector as_r(const Eigen::VectorXd& values) { return RadiusVector{values}; }

py::dict trajectory_to_dict(const Trajectory& trajectory) {
    py::dict out;
    out["times"] = trajectory.times;
    out["residuals"] = trajectory.residuals;
    out["energies"] = trajectory.energies;
    py::list states;
    for (const auto& state : trajectory.states) states.append(state.values);
    out["states"] = states;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spherical circle patterns with prescribed total geodesic curvature";

    py::class_<PatternEdge>(m, "PatternEdge")
        .def(py::init([](std::string id, std::string u, std::string w, double theta) {
                 return PatternEdge{std::move(id), std::move(u), std::move(w), theta};
             }),
             py::arg("id"), py::arg("u"), py::arg("w"), py::arg("theta"))
        .def_readonly("id", &PatternEdge::id)
        .def_readonly("u", &PatternEdge::u)
        .def_readonly("w", &PatternEdge::w)
        .def_readonly("theta", &PatternEdge::theta)
        .def("__repr__", [](const PatternEdge& e) {
            std::ostringstream out;
            out << "PatternEdge(" << e.id << ": " << e.u << " -- " << e.w
                << ", theta=" << e.theta << ")";
            return out.str();
        });

    py::class_<PatternGraph>(m, "PatternGraph")
        .def(py::init<std::vector<std::string>, std::vector<PatternEdge>, std::vector<double>,
                      std::vector<std::vector<std::string>>>(),
             py::arg("vertices"), py::arg("edges"), py::arg("targets"),
             py::arg("faces") = std::vector<std::vector<std::string>>{})
        .def(py::init([](std::vector<std::string> vertices,
                         std::vector<std::tuple<std::string, std::string, std::string, double>>
                             edges,
                         std::vector<double> targets,
                         std::vector<std::vector<std::string>> faces) {
                 std::vector<PatternEdge> converted;
                 converted.reserve(edges.size());
                 for (auto& [id, u, w, theta] : edges) {
                     converted.push_back(
                         {std::move(id), std::move(u), std::move(w), theta});
                 }
                 return PatternGraph(std::move(vertices), std::move(converted),
                                     std::move(targets), std::move(faces));
             }),
             py::arg("vertices"), py::arg("edges"), py::arg("targets"),
             py::arg("faces") = std::vector<std::vector<std::string>>{})
        .def_property_readonly("vertices", &PatternGraph::vertices)
        .def_property_readonly("edges", &PatternGraph::edges)
        .def_property_readonly("targets",
                               [](const PatternGraph& g) { return g.targets(); })
        .def_property_readonly("faces", &PatternGraph::face_cycles)
        .def("vertex_count", &PatternGraph::vertex_count)
        .def("edge_count", &PatternGraph::edge_count)
        .def("face_count", &PatternGraph::face_count)
        .def("vertex_index", &PatternGraph::vertex_index, py::arg("id"))
        .def("incident_edges", &PatternGraph::incident_edges, py::arg("vertex_id"))
        .def(
            "boundary_edge_set",
            [](const PatternGraph& g, const std::vector<std::string>& ids) {
                std::vector<std::string> out;
                for (int e : g.boundary_edge_set(ids)) out.push_back(g.edges()[e].id);
                return out;
            },
            py::arg("vertex_ids"));

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("errors", &ValidationReport::errors)
        .def_readonly("warnings", &ValidationReport::warnings)
        .def("valid", &ValidationReport::valid)
        .def("__bool__", &ValidationReport::valid);
    m.def("validate", &validate, py::arg("graph"));

    m.def(
        "k_from_r", [](const Eigen::VectorXd& r) { return k_from_r(as_r(r)).values; },
        py::arg("r"), "Componentwise ln cot r for radii in (0, pi/2).");
    m.def(
        "r_from_k", [](const Eigen::VectorXd& k) { return r_from_k(as_k(k)).values; },
        py::arg("k"), "Componentwise arccot(exp K); inverse of k_from_r.");

    py::class_<BigonMeasurement>(m, "BigonMeasurement")
        .def_readonly("beta1", &BigonMeasurement::beta1)
        .def_readonly("beta2", &BigonMeasurement::beta2)
        .def_readonly("l1", &BigonMeasurement::l1)
        .def_readonly("l2", &BigonMeasurement::l2)
        .def_readonly("L1", &BigonMeasurement::L1)
        .def_readonly("L2", &BigonMeasurement::L2)
        .def_readonly("area", &BigonMeasurement::area)
        .def_readonly("dL1_dK1", &BigonMeasurement::dL1_dK1)
        .def_readonly("dL1_dK2", &BigonMeasurement::dL1_dK2)
        .def_readonly("dL2_dK1", &BigonMeasurement::dL2_dK1)
        .def_readonly("dL2_dK2", &BigonMeasurement::dL2_dK2);
    m.def(
        "measure",
        [](double r1, double r2, double theta) { return measure({r1, r2, theta}); },
        py::arg("r1"), py::arg("r2"), py::arg("theta"),
        "All per-bigon quantities for two circles meeting at angle theta.");
    m.def(
        "half_angle",
        [](double r1, double r2, double theta, int which) {
            return half_angle({r1, r2, theta}, which);
        },
        py::arg("r1"), py::arg("r2"), py::arg("theta"), py::arg("which") = 1);

    py::class_<CurvatureState>(m, "CurvatureState")
        .def_readonly("total_curvature", &CurvatureState::total_curvature)
        .def_readonly("cone_angle", &CurvatureState::cone_angle)
        .def_readonly("circle_length", &CurvatureState::circle_length)
        .def_readonly("face_cone_angle", &CurvatureState::face_cone_angle);
    m.def(
        "curvatures",
        [](const PatternGraph& g, const Eigen::VectorXd& k) { return curvatures(g, as_k(k)); },
        py::arg("graph"), py::arg("k"));

    py::class_<CurvatureJacobian>(m, "CurvatureJacobian")
        .def("dense", &CurvatureJacobian::dense)
        .def("apply", &CurvatureJacobian::apply, py::arg("x"))
        .def("smallest_eigenvalue", &CurvatureJacobian::smallest_eigenvalue);
    m.def(
        "jacobian",
        [](const PatternGraph& g, const Eigen::VectorXd& k) { return jacobian(g, as_k(k)); },
        py::arg("graph"), py::arg("k"));

    m.def(
        "potential",
        [](const PatternGraph& g, const Eigen::VectorXd& k,
           const std::optional<Eigen::VectorXd>& reference, int nodes) {
            if (reference.has_value()) return potential(g, as_k(k), as_k(*reference), nodes);
            return potential(g, as_k(k), nodes);
        },
        py::arg("graph"), py::arg("k"), py::arg("reference") = std::nullopt,
        py::arg("quadrature_nodes") = 48,
        "Potential difference E(k) - E(reference); reference defaults to K = 0.");

    py::class_<FeasibilityReport>(m, "FeasibilityReport")
        .def_readonly("feasible", &FeasibilityReport::feasible)
        .def_readonly("worst_slack", &FeasibilityReport::worst_slack)
        .def_readonly("witness", &FeasibilityReport::witness)
        .def_readonly("method", &FeasibilityReport::method)
        .def("__bool__", [](const FeasibilityReport& r) { return r.feasible; });
    m.def("subset_slack", &subset_slack, py::arg("graph"), py::arg("vertex_indices"));
    m.def("check_exhaustive", &check_exhaustive, py::arg("graph"));
    m.def("check_flow", &check_flow, py::arg("graph"), py::arg("epsilon") = 1e-9);

    py::enum_<Integrator>(m, "Integrator")
        .value("rk4", Integrator::rk4)
        .value("euler", Integrator::euler);

    py::class_<FlowConfig>(m, "FlowConfig")
        .def(py::init<>())
        .def_readwrite("step", &FlowConfig::step)
        .def_readwrite("tol", &FlowConfig::tol)
        .def_readwrite("max_time", &FlowConfig::max_time)
        .def_readwrite("capture_every", &FlowConfig::capture_every)
        .def_readwrite("integrator", &FlowConfig::integrator)
        .def_readwrite("escape_bound", &FlowConfig::escape_bound)
        .def_readwrite("energy_slack", &FlowConfig::energy_slack)
        .def_readwrite("energy_nodes", &FlowConfig::energy_nodes)
        .def_readwrite("max_steps", &FlowConfig::max_steps);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("converged", &SolveResult::converged)
        .def_property_readonly("k_star",
                               [](const SolveResult& r) { return r.k_star.values; })
        .def_property_readonly("r_star",
                               [](const SolveResult& r) { return r.r_star.values; })
        .def_readonly("steps", &SolveResult::steps)
        .def_readonly("final_residual", &SolveResult::final_residual)
        .def_readonly("rate", &SolveResult::rate)
        .def_readonly("rate_predicted", &SolveResult::rate_predicted)
        .def_property_readonly(
            "termination",
            [](const SolveResult& r) { return std::string(to_string(r.termination)); });

    m.def(
        "integrate_flow",
        [](const PatternGraph& g, const Eigen::VectorXd& k0, const FlowConfig& config) {
            auto [trajectory, result] = integrate_flow(g, as_k(k0), config);
            return py::make_tuple(trajectory_to_dict(trajectory), result);
        },
        py::arg("graph"), py::arg("k0"), py::arg("config") = FlowConfig{});
    m.def(
        "integrate_flow_radius",
        [](const PatternGraph& g, const Eigen::VectorXd& r0, const FlowConfig& config) {
            auto [trajectory, result] = integrate_flow_radius(g, as_r(r0), config);
            return py::make_tuple(trajectory_to_dict(trajectory), result);
        },
        py::arg("graph"), py::arg("r0"), py::arg("config") = FlowConfig{});
    m.def(
        "newton_solve",
        [](const PatternGraph& g, const Eigen::VectorXd& k0, double tol, int max_iter) {
            return newton_solve(g, as_k(k0), tol, max_iter);
        },
        py::arg("graph"), py::arg("k0"), py::arg("tol") = 1e-12, py::arg("max_iter") = 100);
    m.def(
        "estimate_rate",
        [](const std::vector<double>& times, const std::vector<double>& residuals) {
            Trajectory trajectory;
            trajectory.times = times;
            trajectory.residuals = residuals;
            return estimate_rate(trajectory);
        },
        py::arg("times"), py::arg("residuals"),
        "Positive decay rate fitted to the tail of ln(residual) vs time.");

    m.def(
        "parse_pattern",
        [](const std::string& text) {
            const ParsedPattern parsed = parse_pattern_string(text);
            return py::make_tuple(parsed.graph,
                                  parsed.radii.has_value()
                                      ? py::object(py::cast(parsed.radii->values))
                                      : py::object(py::none()));
        },
        py::arg("text"), "Parse a pattern file; returns (graph, radii-or-None).");
    m.def(
        "emit_pattern",
        [](const PatternGraph& g, const std::optional<Eigen::VectorXd>& radii) {
            if (radii.has_value()) return emit_pattern(g, as_r(*radii));
            return emit_pattern(g);
        },
        py::arg("graph"), py::arg("radii") = std::nullopt);
    m.def("example_names", &example_names);
    m.def("example_pattern_file", &example_pattern_file, py::arg("name"));

    py::register_exception<ParseError>(m, "PatternParseError");
}

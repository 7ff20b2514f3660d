#include "spcp/curvature.hpp"
#include "spcp/feasibility.hpp"
#include "spcp/io.hpp"
#include "spcp/solver.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using nlohmann::json;

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;   // infeasible / not converged / unknown example
constexpr int kExitBadInput = 2;  // parse or validation errors

int output_precision() {
    if (const char* env = std::getenv("SPCP_PRECISION")) {
        const int digits = std::atoi(env);
        if (digits >= 3 && digits <= 17) return digits;
    }
    return -1;  // nlohmann default: shortest round-trip representation
}

bool verbose() {
    const char* env = std::getenv("SPCP_VERBOSE");
    return env != nullptr && std::string(env) != "0";
}

void round_doubles(json& doc, int digits) {
    if (doc.is_number_float()) {
        char buffer[40];
        std::snprintf(buffer, sizeof(buffer), "%.*g", digits, doc.get<double>());
        doc = std::strtod(buffer, nullptr);
    } else if (doc.is_object() || doc.is_array()) {
        for (auto& item : doc) round_doubles(item, digits);
    }
}

void print_json(const json& doc) {
    const int digits = output_precision();
    if (digits < 0) {
        std::cout << doc.dump(2) << std::endl;
        return;
    }
    json rounded = doc;
    round_doubles(rounded, digits);
    std::cout << rounded.dump(2) << std::endl;
}

struct LoadedPattern {
    spcp::ParsedPattern parsed;
    spcp::ValidationReport validation;
};

std::optional<LoadedPattern> load_and_validate(const std::string& path, json& report) {
    try {
        LoadedPattern loaded{spcp::load_pattern_file(path), {}};
        loaded.validation = spcp::validate(loaded.parsed.graph);
        report["validation"] = spcp::validation_to_json(loaded.validation);
        if (!loaded.validation.valid()) {
            report["error"] = "pattern failed validation";
            return std::nullopt;
        }
        for (const auto& warning : loaded.validation.warnings) {
            if (verbose()) std::cerr << "warning: " << warning << '\n';
        }
        return loaded;
    } catch (const spcp::ParseError& e) {
        report["error"] = std::string("parse error: ") + e.what();
        return std::nullopt;
    } catch (const std::exception& e) {
        report["error"] = e.what();
        return std::nullopt;
    }
}

spcp::FeasibilityReport run_feasibility(const spcp::PatternGraph& graph, double epsilon) {
    if (graph.vertex_count() <= 24) return spcp::check_exhaustive(graph);
    return spcp::check_flow(graph, epsilon);
}

spcp::KVector initial_k(const spcp::ParsedPattern& parsed, std::optional<unsigned> seed) {
    const int n = parsed.graph.vertex_count();
    if (seed.has_value()) {
        std::mt19937_64 rng(*seed);
        spcp::KVector k;
        k.values.resize(n);
        for (int v = 0; v < n; ++v) {
            k.values[v] = -3.0 + 6.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
        }
        return k;
    }
    if (parsed.radii.has_value()) return spcp::k_from_r(*parsed.radii);
    spcp::KVector k;
    k.values = Eigen::VectorXd::Zero(n);
    return k;
}

int cmd_check(const std::string& path, double epsilon) {
    json report;
    const auto loaded = load_and_validate(path, report);
    if (!loaded.has_value()) {
        print_json(report);
        return kExitBadInput;
    }
    const spcp::FeasibilityReport feasibility =
        run_feasibility(loaded->parsed.graph, epsilon);
    report["feasibility"] = spcp::feasibility_to_json(loaded->parsed.graph, feasibility);
    print_json(report);
    return feasibility.feasible ? kExitSuccess : kExitFailure;
}

int cmd_solve(const std::string& path, const std::string& method, double tol, double max_time,
              double step, int quadrature_nodes, const std::string& trajectory_path,
              std::optional<unsigned> seed) {
    json report;
    const auto loaded = load_and_validate(path, report);
    if (!loaded.has_value()) {
        print_json(report);
        return kExitBadInput;
    }
    const spcp::PatternGraph& graph = loaded->parsed.graph;

    const spcp::FeasibilityReport feasibility = run_feasibility(graph, 1e-9);
    report["feasibility"] = spcp::feasibility_to_json(graph, feasibility);
    if (!feasibility.feasible && verbose()) {
        std::cerr << "warning: infeasible targets; the flow cannot converge\n";
    }

    const spcp::KVector k0 = initial_k(loaded->parsed, seed);
    spcp::FlowConfig config;
    config.tol = tol;
    config.max_time = max_time;
    config.step = step;
    if (quadrature_nodes > 0) config.energy_nodes = quadrature_nodes;

    json config_echo{{"method", method},        {"tol", tol},
                     {"max_time", max_time},    {"step", step},
                     {"quadrature_nodes", config.energy_nodes},
                     {"initial_K", std::vector<double>(k0.values.data(),
                                                       k0.values.data() + k0.values.size())}};
    report["config"] = config_echo;

    bool all_converged = true;
    if (method == "flow" || method == "both") {
        const auto [trajectory, result] = spcp::integrate_flow(graph, k0, config);
        report["flow"] = spcp::solve_result_to_json(graph, result);
        all_converged = all_converged && result.converged;
        if (!trajectory_path.empty()) {
            std::ofstream csv(trajectory_path);
            if (!csv) {
                report["error"] = "cannot write trajectory file '" + trajectory_path + "'";
                print_json(report);
                return kExitBadInput;
            }
            spcp::write_trajectory_csv(csv, trajectory);
        }
    }
    if (method == "newton" || method == "both") {
        const spcp::SolveResult result = spcp::newton_solve(graph, k0, tol);
        report["newton"] = spcp::solve_result_to_json(graph, result);
        all_converged = all_converged && result.converged;
    }
    if (method == "both" && report.contains("flow") && report.contains("newton")) {
        double max_diff = 0.0;
        for (int v = 0; v < graph.vertex_count(); ++v) {
            max_diff = std::max(max_diff,
                                std::abs(report["flow"]["vertices"][v]["K"].get<double>() -
                                         report["newton"]["vertices"][v]["K"].get<double>()));
        }
        report["method_agreement_K"] = max_diff;
    }

    print_json(report);
    return all_converged ? kExitSuccess : kExitFailure;
}

int cmd_report(const std::string& path) {
    json report;
    const auto loaded = load_and_validate(path, report);
    if (!loaded.has_value()) {
        print_json(report);
        return kExitBadInput;
    }
    if (!loaded->parsed.radii.has_value()) {
        report["error"] = "report mode needs a radii: section";
        print_json(report);
        return kExitBadInput;
    }
    try {
        const spcp::KVector k = spcp::k_from_r(*loaded->parsed.radii);
        report["state"] = spcp::state_to_json(loaded->parsed.graph, k);
    } catch (const std::exception& e) {
        report["error"] = e.what();
        print_json(report);
        return kExitBadInput;
    }
    print_json(report);
    return kExitSuccess;
}

int cmd_example(const std::string& name, const std::string& out_path) {
    try {
        const std::string text = spcp::example_pattern_file(name);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "error: cannot write '" << out_path << "'\n";
                return kExitBadInput;
            }
            out << text;
        }
        return kExitSuccess;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spherical circle patterns with prescribed total geodesic curvature"};
    app.require_subcommand(1);

    std::string file;
    double epsilon = 1e-9;
    auto* check = app.add_subcommand(
        "check", "Check the subset feasibility condition on the targets");
    check->add_option("file", file, "pattern file")->required();
    check->add_option("--epsilon", epsilon, "strictness margin for the max-flow method");

    std::string method = "both";
    double tol = 1e-10;
    double max_time = 1000.0;
    double step = 0.1;
    int quadrature_nodes = 0;
    std::string trajectory_path;
    std::optional<unsigned> seed;
    auto* solve = app.add_subcommand("solve", "Solve for the radii by flow and/or Newton");
    solve->add_option("file", file, "pattern file")->required();
    solve->add_option("--method", method, "flow | newton | both")
        ->check(CLI::IsMember({"flow", "newton", "both"}));
    solve->add_option("--tol", tol, "residual tolerance on ||L - Lhat||_inf");
    solve->add_option("--max-time", max_time, "flow time budget");
    solve->add_option("--step", step, "initial flow time step");
    solve->add_option("--quadrature-nodes", quadrature_nodes,
                      "Gauss-Legendre nodes for energy evaluation");
    solve->add_option("--trajectory", trajectory_path, "write the flow trajectory CSV here");
    solve->add_option("--seed", seed, "draw the initial K uniformly from [-3,3]^N");

    auto* report = app.add_subcommand(
        "report", "Evaluate curvatures and cone angles at the radii in the file");
    report->add_option("file", file, "pattern file with a radii: section")->required();

    std::string example_name;
    std::string out_path;
    auto* example = app.add_subcommand("example", "Emit a ready-to-run example pattern file");
    example->add_option("name", example_name, "tetrahedron | cube | octahedron | ...")
        ->required();
    example->add_option("-o,--output", out_path, "write to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    if (check->parsed()) return cmd_check(file, epsilon);
    if (solve->parsed()) {
        return cmd_solve(file, method, tol, max_time, step, quadrature_nodes, trajectory_path,
                         seed);
    }
    if (report->parsed()) return cmd_report(file);
    if (example->parsed()) return cmd_example(example_name, out_path);
    return kExitBadInput;
}

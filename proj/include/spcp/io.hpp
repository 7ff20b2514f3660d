#pragma once

#include "spcp/feasibility.hpp"
#include "spcp/pattern_graph.hpp"
#include "spcp/solver.hpp"
#include "spcp/vectors.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace spcp {

/// Parse failure with the 1-based source line it occurred on.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// A pattern definition file: `vertices:` ids, `edges:` lines of
/// `id u w theta`, `targets:` lines of `v value`, optional `faces:` lines of
/// edge-id cycles and optional `radii:` lines of `v value`. `#` starts a
/// comment. Angles and targets accept plain decimals and exact constants of
/// the form `[N]pi[/D]` (pi/2, pi/3, 2pi/3, ...), evaluated in long double.
struct ParsedPattern {
    PatternGraph graph;
    std::optional<RadiusVector> radii;
};

ParsedPattern parse_pattern(std::istream& in);
ParsedPattern parse_pattern_string(const std::string& text);
ParsedPattern load_pattern_file(const std::string& path);

/// Exact `[N]pi[/D]` literal when the value is bit-identical to one with
/// small N, D; otherwise a 17-significant-digit decimal.
std::string format_angle(double value);

std::string emit_pattern(const PatternGraph& graph,
                         const std::optional<RadiusVector>& radii = std::nullopt);

/// Built-in instances: platonic-solid skeletons with theta = pi/3 on every
/// edge and targets (2/3) * deg(v) * theta, strictly inside the feasible
/// polytope. "tetrahedron" is the standard spherical tiling instance whose
/// solution is r = arccos(1/3) on all vertices.
std::vector<std::string> example_names();
std::string example_pattern_file(const std::string& name);

nlohmann::json validation_to_json(const ValidationReport& report);
nlohmann::json feasibility_to_json(const PatternGraph& graph, const FeasibilityReport& report);

/// Per-vertex table (id, r, K, L, alpha, length) plus per-face cone angles
/// at the point k.
nlohmann::json state_to_json(const PatternGraph& graph, const KVector& k);

nlohmann::json solve_result_to_json(const PatternGraph& graph, const SolveResult& result);

/// Columns: t, residual, energy, K_1..K_N; 17 significant digits throughout.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace spcp

#include "spcp/io.hpp"

#include "spcp/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace spcp {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;

std::string strip_comment(const std::string& line) {
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream stream(line);
    std::string token;
    while (stream >> token) tokens.push_back(token);
    return tokens;
}

/// `[N]pi[/D]` evaluated in long double, or a plain decimal.
double parse_number(const std::string& token, int line) {
    const auto pi_pos = token.find("pi");
    if (pi_pos != std::string::npos) {
        const std::string head = token.substr(0, pi_pos);
        const std::string tail = token.substr(pi_pos + 2);
        long numerator = 1, denominator = 1;
        try {
            if (!head.empty()) {
                std::size_t used = 0;
                numerator = std::stol(head, &used);
                if (used != head.size()) throw std::invalid_argument(head);
            }
            if (!tail.empty()) {
                if (tail[0] != '/') throw std::invalid_argument(tail);
                std::size_t used = 0;
                denominator = std::stol(tail.substr(1), &used);
                if (used != tail.size() - 1) throw std::invalid_argument(tail);
            }
        } catch (const std::exception&) {
            throw ParseError(line, "malformed pi-literal '" + token + "'");
        }
        if (numerator < 1 || denominator < 1) {
            throw ParseError(line, "pi-literal must have positive integer parts: '" + token + "'");
        }
        return static_cast<double>(static_cast<long double>(numerator) * kPi /
                                   static_cast<long double>(denominator));
    }
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end == nullptr || *end != '\0' || end == token.c_str()) {
        throw ParseError(line, "malformed number '" + token + "'");
    }
    return value;
}

enum class Section { none, vertices, edges, targets, faces, radii };

struct PendingValue {
    int line;
    std::string id;
    double value;
};

}  // namespace

ParsedPattern parse_pattern(std::istream& in) {
    std::vector<std::string> vertices;
    std::vector<PatternEdge> edges;
    std::vector<std::vector<std::string>> faces;
    std::vector<PendingValue> targets;
    std::vector<PendingValue> radii;
    bool has_radii_section = false;
    int radii_section_line = 0;

    Section section = Section::none;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string content = strip_comment(raw);
        const auto first = content.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        content = content.substr(first);

        static const std::map<std::string, Section> keywords = {
            {"vertices:", Section::vertices}, {"edges:", Section::edges},
            {"targets:", Section::targets},   {"faces:", Section::faces},
            {"radii:", Section::radii},
        };
        bool matched = false;
        for (const auto& [keyword, value] : keywords) {
            if (content.rfind(keyword, 0) == 0) {
                section = value;
                content = content.substr(keyword.size());
                matched = true;
                if (value == Section::radii) {
                    has_radii_section = true;
                    radii_section_line = line;
                }
                break;
            }
        }
        const std::vector<std::string> tokens = tokenize(content);
        if (tokens.empty()) continue;
        if (!matched && section == Section::none) {
            throw ParseError(line, "content before any section header: '" + tokens.front() + "'");
        }

        switch (section) {
            case Section::vertices:
                vertices.insert(vertices.end(), tokens.begin(), tokens.end());
                break;
            case Section::edges:
                if (tokens.size() != 4) {
                    throw ParseError(line, "edge line must be 'id u w theta'");
                }
                edges.push_back(
                    {tokens[0], tokens[1], tokens[2], parse_number(tokens[3], line)});
                break;
            case Section::targets:
                if (tokens.size() != 2) {
                    throw ParseError(line, "target line must be 'vertex value'");
                }
                targets.push_back({line, tokens[0], parse_number(tokens[1], line)});
                break;
            case Section::faces:
                faces.push_back(tokens);
                break;
            case Section::radii:
                if (tokens.size() != 2) {
                    throw ParseError(line, "radius line must be 'vertex value'");
                }
                radii.push_back({line, tokens[0], parse_number(tokens[1], line)});
                break;
            case Section::none:
                break;
        }
    }

    std::map<std::string, int> order;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        order.emplace(vertices[i], static_cast<int>(i));
    }
    const std::size_t vertex_count = vertices.size();
    const auto resolve = [&order, vertex_count](const std::vector<PendingValue>& pending,
                                                const char* what) {
        std::vector<double> values(vertex_count, std::numeric_limits<double>::quiet_NaN());
        for (const auto& entry : pending) {
            const auto it = order.find(entry.id);
            if (it == order.end()) {
                throw ParseError(entry.line,
                                 std::string(what) + " for undeclared vertex '" + entry.id + "'");
            }
            if (!std::isnan(values[it->second])) {
                throw ParseError(entry.line,
                                 std::string("duplicate ") + what + " for vertex '" + entry.id + "'");
            }
            values[it->second] = entry.value;
        }
        return values;
    };

    ParsedPattern parsed{PatternGraph(vertices, std::move(edges), resolve(targets, "target"),
                                      std::move(faces)),
                         std::nullopt};
    if (has_radii_section) {
        const std::vector<double> values = resolve(radii, "radius");
        RadiusVector r;
        r.values.resize(static_cast<Eigen::Index>(values.size()));
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (std::isnan(values[i])) {
                throw ParseError(radii_section_line,
                                 "missing radius for vertex '" + vertices[i] + "'");
            }
            r.values[static_cast<Eigen::Index>(i)] = values[i];
        }
        parsed.radii = std::move(r);
    }
    return parsed;
}

ParsedPattern parse_pattern_string(const std::string& text) {
    std::istringstream stream(text);
    return parse_pattern(stream);
}

ParsedPattern load_pattern_file(const std::string& path) {
    std::ifstream stream(path);
    if (!stream) throw std::runtime_error("cannot open pattern file '" + path + "'");
    return parse_pattern(stream);
}

std::string format_angle(double value) {
    if (std::isfinite(value) && value > 0.0) {
        for (long denominator = 1; denominator <= 96; ++denominator) {
            const long numerator =
                std::lround(static_cast<double>(value * denominator / M_PI));
            if (numerator < 1 || numerator > 999) continue;
            const double exact = static_cast<double>(
                static_cast<long double>(numerator) * kPi / static_cast<long double>(denominator));
            if (exact == value) {
                std::string text = numerator == 1 ? "pi" : std::to_string(numerator) + "pi";
                if (denominator > 1) text += "/" + std::to_string(denominator);
                return text;
            }
        }
    }
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string emit_pattern(const PatternGraph& graph, const std::optional<RadiusVector>& radii) {
    std::ostringstream out;
    out << "vertices:";
    for (const auto& v : graph.vertices()) out << ' ' << v;
    out << "\n\nedges:\n";
    for (const auto& e : graph.edges()) {
        out << "  " << e.id << ' ' << e.u << ' ' << e.w << ' ' << format_angle(e.theta) << '\n';
    }
    out << "\ntargets:\n";
    for (int v = 0; v < graph.vertex_count(); ++v) {
        out << "  " << graph.vertices()[v] << ' ' << format_angle(graph.targets()[v]) << '\n';
    }
    if (!graph.face_cycles().empty()) {
        out << "\nfaces:\n";
        for (const auto& face : graph.face_cycles()) {
            out << " ";
            for (const auto& id : face) out << ' ' << id;
            out << '\n';
        }
    }
    if (radii.has_value()) {
        out << "\nradii:\n";
        for (int v = 0; v < graph.vertex_count(); ++v) {
            out << "  " << graph.vertices()[v] << ' ' << format_angle(radii->values[v]) << '\n';
        }
    }
    return out.str();
}

namespace {

struct SolidSpec {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::vector<std::string>> face_vertices;  // vertex cycles
};

std::string edge_name(const std::string& a, const std::string& b) {
    return a < b ? a + "-" + b : b + "-" + a;
}

/// Builds the pattern text from a solid given by vertex-cycles per face.
std::string solid_pattern(const SolidSpec& solid) {
    std::vector<PatternEdge> edges;
    const double theta = static_cast<double>(kPi / 3.0L);
    for (const auto& [a, b] : solid.edges) {
        edges.push_back({edge_name(a, b), a, b, theta});
    }
    std::map<std::string, int> degree;
    for (const auto& [a, b] : solid.edges) {
        ++degree[a];
        ++degree[b];
    }
    std::vector<double> targets;
    targets.reserve(solid.vertices.size());
    for (const auto& v : solid.vertices) {
        // (2/3) deg theta = (2 deg / 9) pi: strictly inside the feasible
        // polytope for any scale < 1; 2/3 reproduces the standard
        // tetrahedron instance. Reduced so the emitter prints it exactly.
        long numerator = 2 * degree.at(v);
        long denominator = 9;
        const long g = std::gcd(numerator, denominator);
        numerator /= g;
        denominator /= g;
        targets.push_back(static_cast<double>(static_cast<long double>(numerator) * kPi /
                                              static_cast<long double>(denominator)));
    }
    std::vector<std::vector<std::string>> faces;
    for (const auto& cycle : solid.face_vertices) {
        std::vector<std::string> face;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            face.push_back(edge_name(cycle[i], cycle[(i + 1) % cycle.size()]));
        }
        faces.push_back(std::move(face));
    }
    const PatternGraph graph(solid.vertices, std::move(edges), std::move(targets),
                             std::move(faces));
    return emit_pattern(graph);
}

SolidSpec tetrahedron_spec() {
    return {{"a", "b", "c", "d"},
            {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}},
            {{"a", "b", "c"}, {"a", "b", "d"}, {"a", "c", "d"}, {"b", "c", "d"}}};
}

SolidSpec cube_spec() {
    SolidSpec s;
    s.vertices = {"v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"};
    s.edges = {{"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"}, {"v4", "v1"},
               {"v5", "v6"}, {"v6", "v7"}, {"v7", "v8"}, {"v8", "v5"},
               {"v1", "v5"}, {"v2", "v6"}, {"v3", "v7"}, {"v4", "v8"}};
    s.face_vertices = {{"v1", "v2", "v3", "v4"}, {"v5", "v6", "v7", "v8"},
                       {"v1", "v2", "v6", "v5"}, {"v2", "v3", "v7", "v6"},
                       {"v3", "v4", "v8", "v7"}, {"v4", "v1", "v5", "v8"}};
    return s;
}

SolidSpec octahedron_spec() {
    SolidSpec s;
    s.vertices = {"n", "a", "b", "c", "d", "s"};
    s.edges = {{"n", "a"}, {"n", "b"}, {"n", "c"}, {"n", "d"}, {"a", "b"}, {"b", "c"},
               {"c", "d"}, {"d", "a"}, {"s", "a"}, {"s", "b"}, {"s", "c"}, {"s", "d"}};
    s.face_vertices = {{"n", "a", "b"}, {"n", "b", "c"}, {"n", "c", "d"}, {"n", "d", "a"},
                       {"s", "a", "b"}, {"s", "b", "c"}, {"s", "c", "d"}, {"s", "d", "a"}};
    return s;
}

SolidSpec icosahedron_spec() {
    SolidSpec s;
    s.vertices = {"t"};
    for (int i = 0; i < 5; ++i) s.vertices.push_back("u" + std::to_string(i));
    for (int i = 0; i < 5; ++i) s.vertices.push_back("l" + std::to_string(i));
    s.vertices.push_back("b");
    const auto u = [](int i) { return "u" + std::to_string(((i % 5) + 5) % 5); };
    const auto l = [](int i) { return "l" + std::to_string(((i % 5) + 5) % 5); };
    for (int i = 0; i < 5; ++i) {
        s.edges.push_back({"t", u(i)});
        s.edges.push_back({u(i), u(i + 1)});
        s.edges.push_back({u(i), l(i)});
        s.edges.push_back({u(i + 1), l(i)});
        s.edges.push_back({l(i), l(i + 1)});
        s.edges.push_back({"b", l(i)});
    }
    for (int i = 0; i < 5; ++i) {
        s.face_vertices.push_back({"t", u(i), u(i + 1)});
        s.face_vertices.push_back({u(i), u(i + 1), l(i)});
        s.face_vertices.push_back({l(i), l(i + 1), u(i + 1)});
        s.face_vertices.push_back({"b", l(i), l(i + 1)});
    }
    return s;
}

SolidSpec dodecahedron_spec() {
    SolidSpec s;
    const auto name = [](char ring, int i) {
        return std::string(1, ring) + std::to_string(((i % 5) + 5) % 5);
    };
    for (char ring : {'a', 'b', 'c', 'd'}) {
        for (int i = 0; i < 5; ++i) s.vertices.push_back(name(ring, i));
    }
    for (int i = 0; i < 5; ++i) {
        s.edges.push_back({name('a', i), name('a', i + 1)});
        s.edges.push_back({name('a', i), name('b', i)});
        s.edges.push_back({name('b', i), name('c', i)});
        s.edges.push_back({name('b', i + 1), name('c', i)});
        s.edges.push_back({name('c', i), name('d', i)});
        s.edges.push_back({name('d', i), name('d', i + 1)});
    }
    std::vector<std::string> top, bottom;
    for (int i = 0; i < 5; ++i) top.push_back(name('a', i));
    for (int i = 0; i < 5; ++i) bottom.push_back(name('d', i));
    s.face_vertices.push_back(top);
    s.face_vertices.push_back(bottom);
    for (int i = 0; i < 5; ++i) {
        s.face_vertices.push_back(
            {name('a', i), name('a', i + 1), name('b', i + 1), name('c', i), name('b', i)});
        s.face_vertices.push_back(
            {name('d', i), name('d', i + 1), name('c', i + 1), name('b', i + 1), name('c', i)});
    }
    return s;
}

}  // namespace

std::vector<std::string> example_names() {
    return {"tetrahedron", "cube", "octahedron", "icosahedron", "dodecahedron"};
}

std::string example_pattern_file(const std::string& name) {
    if (name == "tetrahedron") return solid_pattern(tetrahedron_spec());
    if (name == "cube") return solid_pattern(cube_spec());
    if (name == "octahedron") return solid_pattern(octahedron_spec());
    if (name == "icosahedron") return solid_pattern(icosahedron_spec());
    if (name == "dodecahedron") return solid_pattern(dodecahedron_spec());
    std::string known;
    for (const auto& n : example_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown example '" + name + "'; available: " + known);
}

nlohmann::json validation_to_json(const ValidationReport& report) {
    return {{"valid", report.valid()}, {"errors", report.errors}, {"warnings", report.warnings}};
}

nlohmann::json feasibility_to_json(const PatternGraph& graph, const FeasibilityReport& report) {
    std::vector<std::string> witness_ids;
    witness_ids.reserve(report.witness.size());
    for (int v : report.witness) witness_ids.push_back(graph.vertices()[v]);
    return {{"feasible", report.feasible},
            {"worst_slack", report.worst_slack},
            {"witness", witness_ids},
            {"method", report.method}};
}

nlohmann::json state_to_json(const PatternGraph& graph, const KVector& k) {
    const CurvatureState state = curvatures(graph, k);
    const RadiusVector r = r_from_k(k);
    nlohmann::json vertices = nlohmann::json::array();
    double residual = 0.0;
    for (int v = 0; v < graph.vertex_count(); ++v) {
        residual = std::max(residual, std::abs(state.total_curvature[v] - graph.targets()[v]));
        vertices.push_back({{"id", graph.vertices()[v]},
                            {"r", r.values[v]},
                            {"K", k.values[v]},
                            {"L", state.total_curvature[v]},
                            {"alpha", state.cone_angle[v]},
                            {"length", state.circle_length[v]}});
    }
    nlohmann::json out{{"vertices", vertices}, {"residual", residual}};
    if (!state.face_cone_angle.empty()) {
        nlohmann::json faces = nlohmann::json::array();
        for (std::size_t f = 0; f < state.face_cone_angle.size(); ++f) {
            faces.push_back({{"index", f}, {"cone_angle", state.face_cone_angle[f]}});
        }
        out["faces"] = faces;
    }
    return out;
}

nlohmann::json solve_result_to_json(const PatternGraph& graph, const SolveResult& result) {
    nlohmann::json out{{"converged", result.converged},
                       {"steps", result.steps},
                       {"final_residual", result.final_residual},
                       {"rate_fitted", result.rate},
                       {"rate_predicted", result.rate_predicted},
                       {"termination", to_string(result.termination)}};
    out.update(state_to_json(graph, result.k_star));
    return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    const auto put = [&out](double value) {
        char buffer[40];
        std::snprintf(buffer, sizeof(buffer), "%.17g", value);
        out << buffer;
    };
    const Eigen::Index n = trajectory.states.empty() ? 0 : trajectory.states.front().values.size();
    out << "t,residual,energy";
    for (Eigen::Index v = 0; v < n; ++v) out << ",K_" << (v + 1);
    out << '\n';
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        put(trajectory.times[i]);
        out << ',';
        put(trajectory.residuals[i]);
        out << ',';
        put(trajectory.energies[i]);
        for (Eigen::Index v = 0; v < n; ++v) {
            out << ',';
            put(trajectory.states[i].values[v]);
        }
        out << '\n';
    }
}

}  // namespace spcp

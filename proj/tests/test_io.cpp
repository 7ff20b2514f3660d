#include "spcp/io.hpp"

#include "spcp/curvature.hpp"
#include "spcp/feasibility.hpp"
#include "test_support.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <doctest.h>

using namespace spcp;

namespace {

// Exact-literal values the way the parser computes them: long double pi,
// then one rounding to double. (M_PI / 3.0 differs by up to 1 ulp.)
constexpr long double kPiL = 3.141592653589793238462643383279502884L;

double pi_frac(long num, long den) {
    return static_cast<double>(static_cast<long double>(num) * kPiL /
                               static_cast<long double>(den));
}

}  // namespace

TEST_CASE("parse a hand-written pattern file") {
    const std::string text = R"(# sample pattern
vertices: a b c
edges:
  e1 a b pi/3     # exact constant
  e2 b c 0.75
  e3 a c 2pi/3    # out of range, caught by validate not parse
targets:
  a 2pi/3
  b 1.0
  c pi/6
radii:
  a pi/4
  b 0.5
  c 0.6
)";
    const ParsedPattern parsed = parse_pattern_string(text);
    CHECK(parsed.graph.vertex_count() == 3);
    CHECK(parsed.graph.edge_count() == 3);
    CHECK(parsed.graph.edges()[0].theta == pi_frac(1, 3));
    CHECK(parsed.graph.edges()[1].theta == 0.75);
    CHECK(parsed.graph.targets()[0] == pi_frac(2, 3));
    CHECK(parsed.graph.targets()[2] == pi_frac(1, 6));
    REQUIRE(parsed.radii.has_value());
    CHECK(parsed.radii->values[0] == pi_frac(1, 4));
    CHECK(parsed.radii->values[1] == 0.5);
}

TEST_CASE("parse errors carry line numbers") {
    const auto expect_error_line = [](const std::string& text, int line) {
        try {
            parse_pattern_string(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_error_line("vertices: a b\nedges:\n  e1 a b\n", 3);        // missing theta
    expect_error_line("vertices: a b\nedges:\n  e1 a b 0.x5\n", 3);   // bad number
    expect_error_line("vertices: a b\nedges:\n  e1 a b 3pi/\n", 3);   // bad literal
    expect_error_line("stray content\n", 1);                          // no section
    expect_error_line("vertices: a\ntargets:\n  z 1.0\n", 3);         // undeclared vertex
    expect_error_line("vertices: a b\nedges:\n e a b 1\ntargets:\n a 1\n a 2\n", 6);
}

TEST_CASE("missing radii entries are parse errors") {
    const std::string text = "vertices: a b\nedges:\n  e a b 1.0\ntargets:\n  a 1\n  b 1\n"
                             "radii:\n  a 0.5\n";
    CHECK_THROWS_AS(parse_pattern_string(text), ParseError);
}

TEST_CASE("emit/parse roundtrip is semantically identical") {
    std::mt19937_64 rng(12001);
    const PatternGraph g = spcp::testing::random_instance(rng, 9, true);
    RadiusVector radii;
    radii.values.resize(9);
    for (int v = 0; v < 9; ++v) radii.values[v] = spcp::testing::uniform(rng, 0.05, 1.5);

    const std::string text = emit_pattern(g, radii);
    const ParsedPattern back = parse_pattern_string(text);
    CHECK(back.graph.vertices() == g.vertices());
    REQUIRE(back.graph.edge_count() == g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        CHECK(back.graph.edges()[e].id == g.edges()[e].id);
        CHECK(back.graph.edges()[e].u == g.edges()[e].u);
        CHECK(back.graph.edges()[e].w == g.edges()[e].w);
        CHECK(back.graph.edges()[e].theta == g.edges()[e].theta);  // bitwise
    }
    CHECK((back.graph.targets() - g.targets()).norm() == 0.0);
    REQUIRE(back.radii.has_value());
    CHECK((back.radii->values - radii.values).norm() == 0.0);

    const PatternGraph tetra = spcp::testing::tetrahedron_graph();
    const ParsedPattern tetra_back = parse_pattern_string(emit_pattern(tetra));
    CHECK(tetra_back.graph.face_cycles() == tetra.face_cycles());
    CHECK((tetra_back.graph.targets() - tetra.targets()).norm() == 0.0);
}

TEST_CASE("format_angle emits exact constants") {
    CHECK(format_angle(pi_frac(1, 3)) == "pi/3");
    CHECK(format_angle(pi_frac(1, 2)) == "pi/2");
    CHECK(format_angle(pi_frac(2, 3)) == "2pi/3");
    CHECK(format_angle(0.75) == "0.75");
    // Whatever the text, parsing must reproduce the double bit-for-bit.
    std::mt19937_64 rng(12002);
    for (int i = 0; i < 200; ++i) {
        const double x = spcp::testing::uniform(rng, 1e-3, 3.0);
        CHECK(parse_pattern_string("vertices: a b\nedges:\n e a b " + format_angle(x) + "\n")
                  .graph.edges()[0]
                  .theta == x);
    }
}

TEST_CASE("built-in examples validate and are feasible") {
    for (const auto& name : example_names()) {
        CAPTURE(name);
        const ParsedPattern parsed = parse_pattern_string(example_pattern_file(name));
        const ValidationReport report = validate(parsed.graph);
        CHECK(report.valid());
        CHECK(check_exhaustive(parsed.graph).feasible);
    }
    CHECK_THROWS_AS(example_pattern_file("hexagon"), std::invalid_argument);
}

TEST_CASE("tetrahedron example is the standard instance") {
    const ParsedPattern parsed = parse_pattern_string(example_pattern_file("tetrahedron"));
    CHECK(parsed.graph.vertex_count() == 4);
    CHECK(parsed.graph.edge_count() == 6);
    CHECK(parsed.graph.face_count() == 4);
    for (const auto& e : parsed.graph.edges()) {
        CHECK(e.theta == pi_frac(1, 3));
    }
    for (int v = 0; v < 4; ++v) {
        CHECK(parsed.graph.targets()[v] == pi_frac(2, 3));
    }
    const FeasibilityReport feasibility = check_exhaustive(parsed.graph);
    CHECK(feasibility.worst_slack == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-12));
}

TEST_CASE("trajectory CSV layout and precision") {
    Trajectory trajectory;
    for (int i = 0; i < 3; ++i) {
        trajectory.times.push_back(0.1 * i);
        trajectory.residuals.push_back(std::exp(-1.7 * i) / 3.0);
        trajectory.energies.push_back(-0.123456789012345678 * i);
        KVector k;
        k.values = Eigen::Vector2d(1.0 / 3.0 + i, -2.0 / 7.0);
        trajectory.states.push_back(k);
    }
    std::ostringstream out;
    write_trajectory_csv(out, trajectory);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,residual,energy,K_1,K_2");
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    // Second row: t = 0.1, K_1 = 4/3; both must round-trip through the text.
    std::istringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');
    CHECK(std::stod(field) == 0.1);
    std::getline(fields, field, ',');
    CHECK(std::stod(field) == trajectory.residuals[1]);
    std::getline(fields, field, ',');
    CHECK(std::stod(field) == trajectory.energies[1]);
    std::getline(fields, field, ',');
    CHECK(std::stod(field) == trajectory.states[1].values[0]);
}

TEST_CASE("state JSON reports the smooth tetrahedron") {
    const PatternGraph g = spcp::testing::tetrahedron_graph();
    RadiusVector r;
    r.values = Eigen::VectorXd::Constant(4, std::acos(1.0 / 3.0));
    const nlohmann::json state = state_to_json(g, k_from_r(r));
    CHECK(state["residual"].get<double>() < 1e-12);
    REQUIRE(state["vertices"].size() == 4);
    for (const auto& vertex : state["vertices"]) {
        CHECK(vertex["alpha"].get<double>() == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
        CHECK(vertex["L"].get<double>() == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-12));
    }
    REQUIRE(state["faces"].size() == 4);
    for (const auto& face : state["faces"]) {
        CHECK(face["cone_angle"].get<double>() == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    }

    // Round-trip: the reported radii reproduce the same curvatures to 1e-10.
    std::vector<double> reported;
    for (const auto& vertex : state["vertices"]) reported.push_back(vertex["r"].get<double>());
    RadiusVector r2;
    r2.values = Eigen::Map<Eigen::VectorXd>(reported.data(), 4);
    const nlohmann::json again = state_to_json(g, k_from_r(r2));
    for (int v = 0; v < 4; ++v) {
        CHECK(again["vertices"][v]["L"].get<double>() ==
              doctest::Approx(state["vertices"][v]["L"].get<double>()).epsilon(1e-10));
    }
}

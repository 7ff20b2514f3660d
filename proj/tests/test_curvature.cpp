#include "spcp/curvature.hpp"

#include "spcp/bigon.hpp"
#include "test_support.hpp"

#include <cmath>
#include <random>

#include <doctest.h>
#include <Eigen/Dense>

using namespace spcp;
using spcp::testing::random_instance;
using spcp::testing::tetrahedron_graph;
using spcp::testing::uniform;

namespace {

KVector constant_k(int n, double value) {
    KVector k;
    k.values = Eigen::VectorXd::Constant(n, value);
    return k;
}

KVector random_k(std::mt19937_64& rng, int n, double bound) {
    KVector k;
    k.values.resize(n);
    for (int v = 0; v < n; ++v) k.values[v] = uniform(rng, -bound, bound);
    return k;
}

PatternGraph single_edge_graph() {
    return PatternGraph({"a", "b"}, {{"e", "a", "b", M_PI_2}}, {1.0, 1.0});
}

}  // namespace

TEST_CASE("tetrahedron at the solution point is a smooth pattern") {
    const PatternGraph g = tetrahedron_graph();
    RadiusVector r;
    r.values = Eigen::VectorXd::Constant(4, std::acos(1.0 / 3.0));
    const CurvatureState state = curvatures(g, k_from_r(r));
    for (int v = 0; v < 4; ++v) {
        CHECK(state.total_curvature[v] == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-13));
        CHECK(state.cone_angle[v] == doctest::Approx(2.0 * M_PI).epsilon(1e-13));
    }
    REQUIRE(state.face_cone_angle.size() == 4);
    for (double cone : state.face_cone_angle) {
        CHECK(cone == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    }
}

TEST_CASE("single edge totals equal the bigon values") {
    const PatternGraph g = single_edge_graph();
    RadiusVector r;
    r.values = Eigen::Vector2d(M_PI_4, M_PI_4);
    const CurvatureState state = curvatures(g, k_from_r(r));
    const BigonMeasurement m = measure({M_PI_4, M_PI_4, M_PI_2});
    CHECK(state.total_curvature[0] == doctest::Approx(m.L1).epsilon(1e-15));
    CHECK(state.total_curvature[1] == doctest::Approx(m.L2).epsilon(1e-15));
    CHECK(state.total_curvature[0] == doctest::Approx(1.3510217177).epsilon(1e-9));
}

TEST_CASE("relabeling the vertices permutes the curvatures") {
    std::mt19937_64 rng(9001);
    const PatternGraph g = random_instance(rng, 7, true);
    const KVector k = random_k(rng, 7, 2.0);
    const CurvatureState state = curvatures(g, k);

    // Reversed vertex order, same edges and targets re-expressed.
    std::vector<std::string> reversed(g.vertices().rbegin(), g.vertices().rend());
    std::vector<double> targets(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        targets[v] = g.targets()[g.vertex_count() - 1 - v];
    }
    const PatternGraph permuted(reversed, g.edges(), targets);
    KVector k_perm;
    k_perm.values = k.values.reverse();
    const CurvatureState state_perm = curvatures(permuted, k_perm);
    for (int v = 0; v < g.vertex_count(); ++v) {
        CHECK(state_perm.total_curvature[v] ==
              state.total_curvature[g.vertex_count() - 1 - v]);
    }
}

TEST_CASE("curvature state identities L = alpha cos r, l = alpha sin r") {
    std::mt19937_64 rng(9002);
    for (int trial = 0; trial < 20; ++trial) {
        const PatternGraph g = random_instance(rng, 6, true);
        const KVector k = random_k(rng, 6, 2.5);
        const RadiusVector r = r_from_k(k);
        const CurvatureState state = curvatures(g, k);
        for (int v = 0; v < 6; ++v) {
            CHECK(state.total_curvature[v] ==
                  doctest::Approx(state.cone_angle[v] * std::cos(r.values[v])).epsilon(1e-12));
            CHECK(state.circle_length[v] ==
                  doctest::Approx(state.cone_angle[v] * std::sin(r.values[v])).epsilon(1e-12));
            double incident_theta = 0.0;
            for (int e : g.incident(v)) incident_theta += g.edges()[e].theta;
            CHECK(state.total_curvature[v] > 0.0);
            CHECK(state.total_curvature[v] < 2.0 * incident_theta);
        }
    }
}

TEST_CASE("jacobian entries on the single edge") {
    const PatternGraph g = single_edge_graph();
    RadiusVector r;
    r.values = Eigen::Vector2d(M_PI_4, M_PI_4);
    const CurvatureJacobian j = jacobian(g, k_from_r(r));
    const Eigen::MatrixXd dense = j.dense();
    CHECK(dense(0, 0) == doctest::Approx(1.0088441922).epsilon(1e-9));
    CHECK(dense(1, 1) == doctest::Approx(1.0088441922).epsilon(1e-9));
    CHECK(dense(0, 1) == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
    CHECK(dense(1, 0) == dense(0, 1));
}

TEST_CASE("jacobian is symmetric positive definite with nonpositive off-diagonal") {
    std::mt19937_64 rng(9003);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 10);
        const PatternGraph g = random_instance(rng, n, true);
        for (int point = 0; point < 5; ++point) {
            const KVector k = random_k(rng, n, 2.5);
            const Eigen::MatrixXd dense = jacobian(g, k).dense();
            CHECK((dense - dense.transpose()).norm() == 0.0);
            for (int u = 0; u < n; ++u) {
                for (int w = 0; w < n; ++w) {
                    if (u != w) CHECK(dense(u, w) <= 0.0);
                }
                CHECK(dense.row(u).sum() > 0.0);
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense, Eigen::EigenvaluesOnly);
            CHECK(eig.eigenvalues().minCoeff() > 0.0);
        }
    }
}

TEST_CASE("jacobian matches finite differences of the curvature map") {
    std::mt19937_64 rng(9004);
    const double h = 1e-6;
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 5);
        const PatternGraph g = random_instance(rng, n, true);
        const KVector k = random_k(rng, n, 1.5);
        const Eigen::MatrixXd dense = jacobian(g, k).dense();
        for (int w = 0; w < n; ++w) {
            KVector plus = k, minus = k;
            plus.values[w] += h;
            minus.values[w] -= h;
            const Eigen::VectorXd fd = (curvatures(g, plus).total_curvature -
                                        curvatures(g, minus).total_curvature) /
                                       (2.0 * h);
            for (int u = 0; u < n; ++u) {
                CHECK(dense(u, w) == doctest::Approx(fd[u]).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("jacobian apply agrees with the dense materialization") {
    std::mt19937_64 rng(9005);
    const PatternGraph g = random_instance(rng, 9, true);
    const KVector k = random_k(rng, 9, 2.0);
    const CurvatureJacobian j = jacobian(g, k);
    const Eigen::MatrixXd dense = j.dense();
    for (int trial = 0; trial < 10; ++trial) {
        const KVector x = random_k(rng, 9, 3.0);
        CHECK((j.apply(x.values) - dense * x.values).lpNorm<Eigen::Infinity>() < 1e-13);
    }
}

TEST_CASE("potential vanishes at the reference and differentiates to L - Lhat") {
    std::mt19937_64 rng(9006);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const PatternGraph g = random_instance(rng, n, true);
        const KVector k = random_k(rng, n, 1.5);
        CHECK(potential(g, k, k) == 0.0);

        const Eigen::VectorXd grad = curvatures(g, k).total_curvature - g.targets();
        const double h = 1e-6;
        for (int v = 0; v < n; ++v) {
            KVector plus = k, minus = k;
            plus.values[v] += h;
            minus.values[v] -= h;
            const double fd = (potential(g, plus) - potential(g, minus)) / (2.0 * h);
            CHECK(fd == doctest::Approx(grad[v]).epsilon(1e-6));
        }
    }
}

TEST_CASE("potential is path independent") {
    std::mt19937_64 rng(9007);
    for (int trial = 0; trial < 50; ++trial) {
        const PatternGraph g({"a", "b"}, {{"e", "a", "b", uniform(rng, 0.2, M_PI_2)}},
                             {uniform(rng, 0.2, 1.0), uniform(rng, 0.2, 1.0)});
        const KVector from = random_k(rng, 2, 2.0);
        const KVector to = random_k(rng, 2, 2.0);
        // Two-leg axis-aligned path through the corner (to_x, from_y).
        KVector corner;
        corner.values = Eigen::Vector2d(to.values[0], from.values[1]);
        const double direct = potential(g, to, from);
        const double two_leg = potential(g, corner, from) + potential(g, to, corner);
        CHECK(direct == doctest::Approx(two_leg).epsilon(1e-9));
    }
}

TEST_CASE("strict convexity: monotone curvature map") {
    std::mt19937_64 rng(9008);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 8);
        const PatternGraph g = random_instance(rng, n, true);
        const KVector k1 = random_k(rng, n, 2.5);
        KVector k2 = random_k(rng, n, 2.5);
        if ((k1.values - k2.values).isZero(0.0)) k2.values[0] += 0.1;
        const Eigen::VectorXd dl = curvatures(g, k1).total_curvature -
                                   curvatures(g, k2).total_curvature;
        CHECK(dl.dot(k1.values - k2.values) > 0.0);
    }
}

TEST_CASE("dimension and validity errors") {
    const PatternGraph g = single_edge_graph();
    CHECK_THROWS_AS(curvatures(g, constant_k(3, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(jacobian(g, constant_k(1, 0.0)), std::invalid_argument);
    KVector bad = constant_k(2, 0.0);
    bad.values[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(curvatures(g, bad), std::invalid_argument);
    const PatternGraph invalid({"a", "b"}, {{"e", "a", "zz", 1.0}}, {1.0, 1.0});
    CHECK_THROWS_AS(curvatures(invalid, constant_k(2, 0.0)), std::invalid_argument);
}

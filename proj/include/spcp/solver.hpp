#pragma once

#include "spcp/curvature.hpp"
#include "spcp/pattern_graph.hpp"
#include "spcp/vectors.hpp"

#include <string>
#include <utility>
#include <vector>

namespace spcp {

enum class Integrator { rk4, euler };

struct FlowConfig {
    double step = 0.1;            // initial time step; halved whenever a step is rejected
    double tol = 1e-10;           // stop when ||L - Lhat||_inf <= tol
    double max_time = 1000.0;     // cap on integrated flow time
    double capture_every = 0.0;   // trajectory sampling interval; <= 0 samples every step
    Integrator integrator = Integrator::rk4;

    double escape_bound = 50.0;   // ||K||_inf beyond which divergence is suspected
    double energy_slack = 1e-10;  // accepted steps may increase the energy by at most this
    int energy_nodes = 8;         // quadrature nodes for per-step energy increments
    long max_steps = 10'000'000;  // hard cap on accepted steps
};

/// Sampled history of one flow run. States are stored in K coordinates for
/// both flow forms, so runs of the two forms are directly comparable.
/// Energies are potential differences against the initial state and are
/// non-increasing up to the configured slack.
struct Trajectory {
    std::vector<double> times;
    std::vector<KVector> states;
    std::vector<double> residuals;  // ||L - Lhat||_inf per sample
    std::vector<double> energies;
};

enum class Termination {
    tolerance,         // residual dropped below tol
    max_time,          // time or step budget exhausted
    diverging,         // escape bound exceeded with a non-decaying residual
    max_iterations,    // Newton iteration cap reached
    singular_jacobian  // Newton system could not be solved to working precision
};

const char* to_string(Termination t);

struct SolveResult {
    bool converged = false;
    KVector k_star;
    RadiusVector r_star;
    long steps = 0;
    double final_residual = 0.0;
    double rate = 0.0;            // fitted exponential decay rate (NaN if not estimated)
    double rate_predicted = 0.0;  // smallest Jacobian eigenvalue at k_star (NaN if skipped)
    Termination termination = Termination::max_time;
};

/// Integrates dK/dt = -(L(K) - Lhat) from k0. Steps are accepted only if all
/// state entries stay finite and the energy does not increase beyond the
/// slack; rejected steps halve the time step.
std::pair<Trajectory, SolveResult> integrate_flow(const PatternGraph& graph, const KVector& k0,
                                                  const FlowConfig& config = {});

/// Integrates the radius form dr/dt = (L - Lhat) sin(2r) / 2 from r0. The
/// same flow as integrate_flow under K = ln cot r; results agree to
/// integrator order.
std::pair<Trajectory, SolveResult> integrate_flow_radius(const PatternGraph& graph,
                                                         const RadiusVector& r0,
                                                         const FlowConfig& config = {});

/// Damped Newton iteration on L(K) = Lhat with backtracking line search on
/// 0.5 ||L - Lhat||^2. The Newton systems use the symmetric positive definite
/// Jacobian dL/dK (dense factorization for N <= 64, preconditioned conjugate
/// gradients above).
SolveResult newton_solve(const PatternGraph& graph, const KVector& k0, double tol = 1e-12,
                         int max_iter = 100);

/// Least-squares slope of ln(residual) against time over the tail of a
/// converged trajectory, returned as a positive decay rate. Throws
/// std::invalid_argument with fewer than 10 usable tail samples and
/// std::runtime_error if the tail does not decay.
double estimate_rate(const Trajectory& trajectory);

}  // namespace spcp

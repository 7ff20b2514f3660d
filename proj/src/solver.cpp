#include "spcp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace spcp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kDivergenceWindow = 500;  // accepted steps between residual-decay checks

// State-space adapters for the two flow forms. Both expose the state in K
// coordinates for curvature evaluation, energy accounting and reporting.
struct KForm {
    static bool admissible(const Eigen::VectorXd& state) { return state.allFinite(); }
    static Eigen::VectorXd to_k(const Eigen::VectorXd& state) { return state; }
    static Eigen::VectorXd field(const Eigen::VectorXd& /*state*/,
                                 const Eigen::VectorXd& curvature_error) {
        return -curvature_error;
    }
};

struct RadiusForm {
    static bool admissible(const Eigen::VectorXd& state) {
        if (!state.allFinite()) return false;
        return (state.array() > 0.0).all() && (state.array() < M_PI_2).all();
    }
    static Eigen::VectorXd to_k(const Eigen::VectorXd& state) {
        return -state.array().tan().log();
    }
    static Eigen::VectorXd field(const Eigen::VectorXd& state,
                                 const Eigen::VectorXd& curvature_error) {
        return 0.5 * curvature_error.array() * (2.0 * state.array()).sin();
    }
};

void fill_solution(SolveResult& result, const Eigen::VectorXd& k) {
    result.k_star.values = k;
    result.r_star = r_from_k(result.k_star);
}

double fitted_rate_or_nan(const Trajectory& trajectory) {
    try {
        return estimate_rate(trajectory);
    } catch (const std::exception&) {
        return kNaN;
    }
}

double predicted_rate_or_nan(const PatternGraph& graph, const KVector& k) {
    if (graph.vertex_count() > 512) return kNaN;
    return jacobian(graph, k).smallest_eigenvalue();
}

template <class Form>
std::pair<Trajectory, SolveResult> run_flow(const PatternGraph& graph, Eigen::VectorXd state,
                                            const FlowConfig& config) {
    if (!(config.step > 0.0)) throw std::invalid_argument("flow: step must be > 0");
    if (!(config.tol > 0.0)) throw std::invalid_argument("flow: tol must be > 0");
    if (!Form::admissible(state)) {
        throw std::invalid_argument("flow: initial state is not admissible");
    }
    const CurvatureEvaluator evaluator(graph);
    if (state.size() != graph.vertex_count()) {
        throw std::invalid_argument("flow: initial state dimension mismatch");
    }
    const Eigen::VectorXd& targets = graph.targets();

    Trajectory trajectory;
    SolveResult result;
    result.rate = kNaN;
    result.rate_predicted = kNaN;

    const auto field_at = [&](const Eigen::VectorXd& s, Eigen::VectorXd& curvature_error) {
        curvature_error = evaluator.total_curvature(Form::to_k(s)) - targets;
        return Form::field(s, curvature_error);
    };

    double t = 0.0;
    double h = config.step;
    Eigen::VectorXd k_now = Form::to_k(state);
    Eigen::VectorXd error_now;
    Eigen::VectorXd f1 = field_at(state, error_now);
    double residual = error_now.lpNorm<Eigen::Infinity>();
    double energy = 0.0;

    double last_capture = -std::numeric_limits<double>::infinity();
    const auto capture = [&](bool force) {
        if (!force && config.capture_every > 0.0 &&
            t < last_capture + config.capture_every - 1e-12) {
            return;
        }
        if (!trajectory.times.empty() && trajectory.times.back() == t) return;
        trajectory.times.push_back(t);
        trajectory.states.push_back(KVector{k_now});
        trajectory.residuals.push_back(residual);
        trajectory.energies.push_back(energy);
        last_capture = t;
    };
    capture(true);

    long anchor_step = -1;
    double anchor_residual = 0.0;
    Eigen::VectorXd scratch, s2, s3, s4, f2, f3, f4, candidate;

    while (true) {
        if (residual <= config.tol) {
            result.converged = true;
            result.termination = Termination::tolerance;
            break;
        }
        if (t >= config.max_time || result.steps >= config.max_steps) {
            result.termination = Termination::max_time;
            break;
        }

        // Divergence heuristic: beyond the escape bound the residual must
        // keep halving every window, otherwise the run is declared diverging.
        if (k_now.lpNorm<Eigen::Infinity>() > config.escape_bound) {
            if (anchor_step < 0) {
                anchor_step = result.steps;
                anchor_residual = residual;
            } else if (result.steps - anchor_step >= kDivergenceWindow) {
                if (residual > 0.5 * anchor_residual) {
                    result.termination = Termination::diverging;
                    break;
                }
                anchor_step = result.steps;
                anchor_residual = residual;
            }
        } else {
            anchor_step = -1;
        }

        const double step = std::min(h, config.max_time - t);
        bool accepted = false;
        double dE = 0.0;
        if (config.integrator == Integrator::rk4) {
            s2 = state + 0.5 * step * f1;
            if (Form::admissible(s2)) {
                f2 = field_at(s2, scratch);
                s3 = state + 0.5 * step * f2;
                if (Form::admissible(s3)) {
                    f3 = field_at(s3, scratch);
                    s4 = state + step * f3;
                    if (Form::admissible(s4)) {
                        f4 = field_at(s4, scratch);
                        candidate = state + (step / 6.0) * (f1 + 2.0 * f2 + 2.0 * f3 + f4);
                        accepted = Form::admissible(candidate);
                    }
                }
            }
        } else {
            candidate = state + step * f1;
            accepted = Form::admissible(candidate);
        }
        if (accepted) {
            const Eigen::VectorXd k_next = Form::to_k(candidate);
            dE = evaluator.segment_energy(k_now, k_next, config.energy_nodes);
            accepted = std::isfinite(dE) && dE <= config.energy_slack;
            if (accepted) {
                state = candidate;
                k_now = k_next;
            }
        }
        if (!accepted) {
            h *= 0.5;
            if (h < 1e-12) {
                result.termination = Termination::diverging;
                break;
            }
            continue;
        }

        t += step;
        ++result.steps;
        energy += dE;
        f1 = field_at(state, error_now);
        residual = error_now.lpNorm<Eigen::Infinity>();
        capture(false);
    }

    capture(true);
    result.final_residual = residual;
    fill_solution(result, k_now);
    if (result.converged) {
        result.rate = fitted_rate_or_nan(trajectory);
        result.rate_predicted = predicted_rate_or_nan(graph, result.k_star);
    }
    return {std::move(trajectory), std::move(result)};
}

// Diagonally preconditioned conjugate gradients for J x = b.
Eigen::VectorXd solve_cg(const CurvatureJacobian& j, const Eigen::VectorXd& b) {
    const Eigen::VectorXd inv_diag = j.diagonal().cwiseInverse();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
    Eigen::VectorXd r = b;
    Eigen::VectorXd z = inv_diag.cwiseProduct(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    const double tol2 = 1e-28 * std::max(1.0, b.squaredNorm());
    for (int it = 0; it < 20 * b.size() + 50; ++it) {
        if (r.squaredNorm() <= tol2) break;
        const Eigen::VectorXd jp = j.apply(p);
        const double alpha = rz / p.dot(jp);
        if (!std::isfinite(alpha)) break;
        x += alpha * p;
        r -= alpha * jp;
        z = inv_diag.cwiseProduct(r);
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    return x;
}

}  // namespace

const char* to_string(Termination t) {
    switch (t) {
        case Termination::tolerance: return "tolerance";
        case Termination::max_time: return "max_time";
        case Termination::diverging: return "diverging";
        case Termination::max_iterations: return "max_iterations";
        case Termination::singular_jacobian: return "singular_jacobian";
    }
    return "unknown";
}

std::pair<Trajectory, SolveResult> integrate_flow(const PatternGraph& graph, const KVector& k0,
                                                  const FlowConfig& config) {
    return run_flow<KForm>(graph, k0.values, config);
}

std::pair<Trajectory, SolveResult> integrate_flow_radius(const PatternGraph& graph,
                                                         const RadiusVector& r0,
                                                         const FlowConfig& config) {
    return run_flow<RadiusForm>(graph, r0.values, config);
}

SolveResult newton_solve(const PatternGraph& graph, const KVector& k0, double tol, int max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("newton_solve: tol must be > 0");
    const CurvatureEvaluator evaluator(graph);
    if (k0.values.size() != graph.vertex_count()) {
        throw std::invalid_argument("newton_solve: initial state dimension mismatch");
    }
    if (!k0.values.allFinite()) {
        throw std::invalid_argument("newton_solve: initial state has non-finite entries");
    }
    const Eigen::VectorXd& targets = graph.targets();

    SolveResult result;
    result.rate = kNaN;
    result.rate_predicted = kNaN;

    Eigen::VectorXd k = k0.values;
    Eigen::VectorXd error = evaluator.total_curvature(k) - targets;
    result.termination = Termination::max_iterations;
    for (int iter = 0; iter <= max_iter; ++iter) {
        if (error.lpNorm<Eigen::Infinity>() <= tol) {
            result.converged = true;
            result.termination = Termination::tolerance;
            break;
        }
        if (iter == max_iter) break;

        const CurvatureJacobian j = jacobian(graph, KVector{k});
        Eigen::VectorXd delta;
        if (graph.vertex_count() <= 64) {
            const Eigen::LDLT<Eigen::MatrixXd> ldlt(j.dense());
            if (ldlt.info() != Eigen::Success) {
                result.termination = Termination::singular_jacobian;
                break;
            }
            delta = ldlt.solve(-error);
        } else {
            delta = solve_cg(j, -error);
        }
        if (!delta.allFinite()) {
            result.termination = Termination::singular_jacobian;
            break;
        }
        // Near the box ends the Jacobian is almost singular and the raw
        // Newton step can be enormous; clamp its length. Scaling keeps it a
        // descent direction and leaves steps near the root untouched.
        double step_scale = 1.0;
        const double step_norm = delta.lpNorm<Eigen::Infinity>();
        if (step_norm > 10.0) {
            step_scale = 10.0 / step_norm;
            delta *= step_scale;
        }

        // Armijo backtracking on the merit 0.5 ||L - Lhat||^2. The Newton
        // direction satisfies grad(merit) . delta = -scale ||error||^2.
        const double merit = 0.5 * error.squaredNorm();
        const double decrease = step_scale * error.squaredNorm();
        double stride = 1.0;
        bool moved = false;
        while (stride >= 1e-14) {
            const Eigen::VectorXd k_try = k + stride * delta;
            const Eigen::VectorXd error_try = evaluator.total_curvature(k_try) - targets;
            if (error_try.allFinite() &&
                0.5 * error_try.squaredNorm() <= merit - 1e-4 * stride * decrease) {
                k = k_try;
                error = error_try;
                moved = true;
                break;
            }
            stride *= 0.5;
        }
        ++result.steps;
        if (!moved) {
            result.termination = Termination::singular_jacobian;
            break;
        }
    }

    result.final_residual = error.lpNorm<Eigen::Infinity>();
    fill_solution(result, k);
    if (result.converged) {
        result.rate_predicted = predicted_rate_or_nan(graph, result.k_star);
    }
    return result;
}

double estimate_rate(const Trajectory& trajectory) {
    const std::size_t n = trajectory.times.size();
    std::vector<std::pair<double, double>> tail;  // (t, ln residual)
    const std::size_t want = std::max<std::size_t>(10, n / 3);
    for (std::size_t i = n >= want ? n - want : 0; i < n; ++i) {
        if (trajectory.residuals[i] > 0.0) {
            tail.emplace_back(trajectory.times[i], std::log(trajectory.residuals[i]));
        }
    }
    if (tail.size() < 10) {
        throw std::invalid_argument("estimate_rate: too few samples in the decay tail");
    }

    double mean_t = 0.0, mean_y = 0.0;
    for (const auto& [t, y] : tail) {
        mean_t += t;
        mean_y += y;
    }
    mean_t /= static_cast<double>(tail.size());
    mean_y /= static_cast<double>(tail.size());
    double cov = 0.0, var = 0.0;
    for (const auto& [t, y] : tail) {
        cov += (t - mean_t) * (y - mean_y);
        var += (t - mean_t) * (t - mean_t);
    }
    if (var == 0.0) throw std::invalid_argument("estimate_rate: degenerate time axis");
    const double slope = cov / var;
    if (!(slope < 0.0)) throw std::runtime_error("estimate_rate: non-decaying tail");
    return -slope;
}

}  // namespace spcp

#pragma once

#include <vector>

namespace spcp {

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes and weights for the n-point Gauss-Legendre rule, computed by
/// Newton iteration on the Legendre recurrence and cached per n.
const QuadratureRule& gauss_legendre(int n);

template <class F>
double integrate(const QuadratureRule& rule, double a, double b, F&& f) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return half * acc;
}

}  // namespace spcp

#pragma once

#include <Eigen/Core>

namespace spcp {

/// Per-vertex solver coordinate K_v = ln cot r_v. Unconstrained: any finite
/// value is admissible, and K -> -inf / +inf corresponds to r -> pi/2 / 0.
struct KVector {
    Eigen::VectorXd values;
};

/// Per-vertex circle radius r_v, constrained to the open box (0, pi/2)^N.
struct RadiusVector {
    Eigen::VectorXd values;
};

/// Componentwise K = ln cot r. Throws std::domain_error if any entry lies
/// outside (0, pi/2).
KVector k_from_r(const RadiusVector& r);

/// Componentwise r = arccot(exp K). Throws std::domain_error on non-finite
/// entries. Inverse of k_from_r.
RadiusVector r_from_k(const KVector& k);

/// sin r, cos r and cot r of the radius encoded by one K entry, computed
/// without forming r. Stable for |K| up to ~350.
struct CircleTrig {
    double sin_r;
    double cos_r;
    double cot_r;
};

CircleTrig circle_trig_from_k(double k);

}  // namespace spcp

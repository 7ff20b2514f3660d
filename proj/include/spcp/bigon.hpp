#pragma once

#include "spcp/vectors.hpp"

namespace spcp {

/// Two circle radii and the angle at which the circles intersect. Radii must
/// lie in (0, pi/2) with a 1e-12 margin; theta must lie in (0, pi/2].
struct BigonInput {
    double r1;
    double r2;
    double theta;
};

/// Everything measured on the lens-shaped intersection of the two spherical
/// disks: the half-angle each arc subtends at its center, arc lengths, total
/// geodesic curvature per arc, area, and the partials of (L1, L2) with
/// respect to the log-cotangent coordinates (K1, K2).
struct BigonMeasurement {
    double beta1;
    double beta2;
    double l1;
    double l2;
    double L1;
    double L2;
    double area;      // 2*theta - L1 - L2
    double dL1_dK1;
    double dL1_dK2;
    double dL2_dK1;   // equals dL1_dK2 by the same formula
    double dL2_dK2;
};

/// Throws std::domain_error if the input violates the admissible ranges.
void validate_bigon_input(const BigonInput& input);

/// Half-angle at center 1 or 2, in (0, pi). The two-argument arctangent of
/// (sin theta, cot r_other * sin r + cos r * cos theta) picks the correct
/// branch when the cotangent of the half-angle is non-positive.
double half_angle(const BigonInput& input, int which);

BigonMeasurement measure(const BigonInput& input);

/// Kernel on precomputed per-circle trig values; no range checks. Used by the
/// per-vertex assembly where sin/cos/cot come straight from K.
BigonMeasurement measure_trig(const CircleTrig& c1, const CircleTrig& c2, double sin_theta,
                              double cos_theta, double theta);

}  // namespace spcp

#include "spcp/bigon.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spcp {

namespace {

constexpr double kBoundaryMargin = 1e-12;

}  // namespace

void validate_bigon_input(const BigonInput& input) {
    const auto check_radius = [](double r, const char* name) {
        if (!std::isfinite(r) || r < kBoundaryMargin || r > M_PI_2 - kBoundaryMargin) {
            throw std::domain_error(std::string("bigon: ") + name +
                                    " must lie in (0, pi/2) with 1e-12 margin, got " +
                                    std::to_string(r));
        }
    };
    check_radius(input.r1, "r1");
    check_radius(input.r2, "r2");
    if (!std::isfinite(input.theta) || input.theta <= 0.0 || input.theta > M_PI_2) {
        throw std::domain_error("bigon: theta must lie in (0, pi/2], got " +
                                std::to_string(input.theta));
    }
}

double half_angle(const BigonInput& input, int which) {
    validate_bigon_input(input);
    if (which != 1 && which != 2) {
        throw std::invalid_argument("half_angle: which must be 1 or 2");
    }
    const double r = which == 1 ? input.r1 : input.r2;
    const double r_other = which == 1 ? input.r2 : input.r1;
    const double q = std::cos(r_other) / std::sin(r_other) * std::sin(r) +
                     std::cos(r) * std::cos(input.theta);
    return std::atan2(std::sin(input.theta), q);
}

BigonMeasurement measure_trig(const CircleTrig& c1, const CircleTrig& c2, double sin_theta,
                              double cos_theta, double theta) {
    // Cotangent 4-part formula: cot(beta_1) * sin(theta) = cot r2 sin r1 + cos r1 cos theta.
    const double q1 = c2.cot_r * c1.sin_r + c1.cos_r * cos_theta;
    const double q2 = c1.cot_r * c2.sin_r + c2.cos_r * cos_theta;
    const double beta1 = std::atan2(sin_theta, q1);
    const double beta2 = std::atan2(sin_theta, q2);

    const double h1 = std::hypot(q1, sin_theta);
    const double h2 = std::hypot(q2, sin_theta);
    const double sin_b1 = sin_theta / h1;
    const double cos_b1 = q1 / h1;
    const double sin_b2 = sin_theta / h2;
    const double cos_b2 = q2 / h2;

    BigonMeasurement m;
    m.beta1 = beta1;
    m.beta2 = beta2;
    m.l1 = 2.0 * beta1 * c1.sin_r;
    m.l2 = 2.0 * beta2 * c2.sin_r;
    m.L1 = 2.0 * beta1 * c1.cos_r;
    m.L2 = 2.0 * beta2 * c2.cos_r;
    m.area = 2.0 * theta - m.L1 - m.L2;

    // Cross partial: k1 k2 * (-2 sin^2(beta1) sin^2(r1)) / sin(theta). The same
    // value serves both off-diagonal entries; by the spherical sine law
    // sin(beta1) sin(r1) = sin(beta2) sin(r2), so the formula is symmetric.
    const double cross =
        -2.0 * c1.cot_r * c2.cot_r * sin_b1 * sin_b1 * c1.sin_r * c1.sin_r / sin_theta;
    // Row sums: d(L1+L2)/dK_i = cos r_i sin^2 r_i (2 beta_i - sin 2 beta_i).
    const double row1 = c1.cos_r * c1.sin_r * c1.sin_r * (2.0 * beta1 - 2.0 * sin_b1 * cos_b1);
    const double row2 = c2.cos_r * c2.sin_r * c2.sin_r * (2.0 * beta2 - 2.0 * sin_b2 * cos_b2);

    m.dL1_dK2 = cross;
    m.dL2_dK1 = cross;
    m.dL1_dK1 = row1 - cross;
    m.dL2_dK2 = row2 - cross;
    return m;
}

BigonMeasurement measure(const BigonInput& input) {
    validate_bigon_input(input);
    const CircleTrig c1{std::sin(input.r1), std::cos(input.r1), 1.0 / std::tan(input.r1)};
    const CircleTrig c2{std::sin(input.r2), std::cos(input.r2), 1.0 / std::tan(input.r2)};
    return measure_trig(c1, c2, std::sin(input.theta), std::cos(input.theta), input.theta);
}

}  // namespace spcp

#include "spcp/vectors.hpp"

#include <cmath>
#include <stdexcept>

namespace spcp {

KVector k_from_r(const RadiusVector& r) {
    KVector k;
    k.values.resize(r.values.size());
    for (Eigen::Index i = 0; i < r.values.size(); ++i) {
        const double ri = r.values[i];
        if (!(ri > 0.0 && ri < M_PI_2)) {
            throw std::domain_error("k_from_r: radius outside (0, pi/2) at index " +
                                    std::to_string(i));
        }
        k.values[i] = -std::log(std::tan(ri));
    }
    return k;
}

RadiusVector r_from_k(const KVector& k) {
    RadiusVector r;
    r.values.resize(k.values.size());
    for (Eigen::Index i = 0; i < k.values.size(); ++i) {
        const double ki = k.values[i];
        if (!std::isfinite(ki)) {
            throw std::domain_error("r_from_k: non-finite entry at index " + std::to_string(i));
        }
        r.values[i] = std::atan(std::exp(-ki));
    }
    return r;
}

CircleTrig circle_trig_from_k(double k) {
    // cot r = e^K; csc^2 r = 1 + e^{2K}; sec^2 r = 1 + e^{-2K}.
    const double cot = std::exp(k);
    const double sin_r = 1.0 / std::sqrt(1.0 + std::exp(2.0 * k));
    const double cos_r = 1.0 / std::sqrt(1.0 + std::exp(-2.0 * k));
    return CircleTrig{sin_r, cos_r, cot};
}

}  // namespace spcp

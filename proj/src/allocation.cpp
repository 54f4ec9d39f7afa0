#include "lbf/allocation.hpp"

#include <cmath>

#include "lbf/errors.hpp"

namespace lbf {

RotorLayout::RotorLayout(const Config& config) : config_(config) {
    if (config.arm_length <= 0.0 || config.thrust_coeff <= 0.0) {
        throw ConfigError("rotor layout: arm length and thrust coefficient must be positive");
    }
    if (!(config.w_min >= 0.0 && config.w_max > config.w_min)) {
        throw ConfigError("rotor layout: need 0 <= w_min < w_max");
    }
    for (int i = 0; i < 6; ++i) {
        const double psi = 2.0 * M_PI * i / 6.0;
        const Vec3 radial(std::cos(psi), std::sin(psi), 0.0);
        const Vec3 tangential(-std::sin(psi), std::cos(psi), 0.0);
        const Vec3 position = config.arm_length * radial;
        // alternating tilt about the arm, then the common flip about the
        // tangential axis; spin handedness alternates with the tilt sign
        const double alpha_i = (i % 2 == 0) ? config.alpha : -config.alpha;
        const double handedness = (i % 2 == 0) ? 1.0 : -1.0;
        const Vec3 axis =
            rodrigues(rodrigues(Vec3::UnitZ(), radial, alpha_i), tangential, config.beta);
        axes_[static_cast<std::size_t>(i)] = axis;

        const Vec3 force_per_w2 = config.thrust_coeff * axis;
        const Vec3 moment_per_w2 =
            position.cross(force_per_w2) + handedness * config.drag_ratio * force_per_w2;
        mixer_.block<3, 1>(0, i) = force_per_w2;
        mixer_.block<3, 1>(3, i) = moment_per_w2;
    }
    const Eigen::JacobiSVD<Mat6> svd(mixer_);
    const double smin = svd.singularValues().minCoeff();
    condition_ = (smin > 0.0) ? svd.singularValues().maxCoeff() / smin
                              : std::numeric_limits<double>::infinity();
    if (!(condition_ < 1e9)) {
        throw ConfigError("rotor layout: allocation matrix is rank deficient");
    }
    mixer_lu_ = Eigen::PartialPivLU<Mat6>(mixer_);
}

AllocationDemand allocate(const BodyForce& u1, const Vec3& u2, const RotorLayout& layout) {
    Vec6 wrench;
    wrench << u1, u2;
    AllocationDemand out;
    out.w_squared = layout.invert(wrench);
    for (int i = 0; i < 6; ++i) {
        const bool neg = out.w_squared[i] < 0.0;
        out.negative[static_cast<std::size_t>(i)] = neg;
        out.any_negative = out.any_negative || neg;
    }
    return out;
}

RotorCommand saturate_rotors(const Vec6& w_squared, const RotorLayout& layout,
                             bool enforce_limits) {
    RotorCommand out;
    for (int i = 0; i < 6; ++i) {
        const double w = std::sqrt(std::max(w_squared[i], 0.0));
        double clamped = w;
        if (enforce_limits) {
            clamped = std::clamp(w, layout.config().w_min, layout.config().w_max);
        }
        out.w[i] = clamped;
        const bool sat = clamped != w || w_squared[i] < 0.0;
        out.saturated[static_cast<std::size_t>(i)] = sat;
        out.any_saturated = out.any_saturated || sat;
    }
    return out;
}

std::pair<BodyForce, Vec3> realize_wrench(const RotorCommand& cmd,
                                          const RotorLayout& layout) {
    Vec6 w2;
    for (int i = 0; i < 6; ++i) {
        w2[i] = cmd.w[i] * cmd.w[i];
    }
    const Vec6 wrench = layout.mixer() * w2;
    return {wrench.head<3>(), wrench.tail<3>()};
}

}  // namespace lbf

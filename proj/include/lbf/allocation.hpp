#pragma once

#include <array>

#include "lbf/geometry.hpp"
#include "lbf/lbf_sets.hpp"

namespace lbf {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Hexarotor geometry with rotors on arms of length `arm_length` at 60 deg
/// spacing, each thrust axis tilted about the arm by alternating +/-alpha
/// and then about the tangential direction by beta. The 6x6 map from squared
/// spin rates to body wrench is inverted once at construction; construction
/// fails when the chosen angles make it rank deficient.
class RotorLayout {
public:
    struct Config {
        double arm_length = 0.4;         // m
        double alpha = 35.0 * M_PI / 180.0;  // rad, alternating sign around the hex
        double beta = 25.0 * M_PI / 180.0;   // rad
        double thrust_coeff = 12.0 / (83.0 * 83.0);  // N / Hz^2
        double drag_ratio = 0.017;       // m, drag moment per unit thrust
        double w_min = 43.0;             // Hz
        double w_max = 83.0;             // Hz
    };

    RotorLayout() : RotorLayout(Config{}) {}
    explicit RotorLayout(const Config& config);

    const Config& config() const { return config_; }
    const Mat6& mixer() const { return mixer_; }
    double condition_number() const { return condition_; }

    /// Thrust direction of rotor i in the body frame.
    const Vec3& thrust_axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }

    /// Solves mixer * w2 = wrench with the factorization cached at construction.
    Vec6 invert(const Vec6& wrench) const { return mixer_lu_.solve(wrench); }

private:
    Config config_;
    std::array<Vec3, 6> axes_;
    Mat6 mixer_;       // wrench per unit w_i^2
    Eigen::PartialPivLU<Mat6> mixer_lu_;
    double condition_ = 0.0;
};

/// Exact squared-spin-rate demand for a wrench. Negative components are
/// reported, never clipped here; the spin-rate clamps live in
/// saturate_rotors().
struct AllocationDemand {
    Vec6 w_squared = Vec6::Zero();   // Hz^2, may contain negative entries
    std::array<bool, 6> negative{};  // per-rotor negative-thrust flags
    bool any_negative = false;
};

AllocationDemand allocate(const BodyForce& u1, const Vec3& u2, const RotorLayout& layout);

/// Spin rates after the physical clamps: w_i = clamp(sqrt(max(w2, 0)),
/// w_min, w_max) when limits are enforced, otherwise only the sqrt floor
/// at zero applies.
struct RotorCommand {
    Vec6 w = Vec6::Zero();           // Hz
    std::array<bool, 6> saturated{}; // clamped against a limit
    bool any_saturated = false;
};

RotorCommand saturate_rotors(const Vec6& w_squared, const RotorLayout& layout,
                             bool enforce_limits = true);

/// Forward model: the wrench actually produced by the commanded spin rates.
/// This, not the commanded wrench, is what drives the plant in realized
/// actuation mode.
std::pair<BodyForce, Vec3> realize_wrench(const RotorCommand& cmd,
                                          const RotorLayout& layout);

}  // namespace lbf

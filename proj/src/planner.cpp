#include "lbf/planner.hpp"

#include <cassert>
#include <cmath>

#include "lbf/errors.hpp"

namespace lbf {

namespace {

constexpr double kTinyRadius = 1e-9;   // cylinder radii below this use exact alignment
constexpr double kDegenerate = 1e-9;   // relative cross-product threshold

// Smallest theta in [0, theta_max] with f_r . rodrigues(b_3r, axis, theta)
// >= threshold, assuming the predicate is monotone along the sweep and holds
// at theta_max. Returns the feasible end of the final bracket.
double bisect_tilt(const Vec3& b_3r, const Vec3& f_r, const Vec3& axis,
                   double theta_max, double threshold, int iterations) {
    const auto feasible = [&](double theta) {
        return f_r.dot(rodrigues(b_3r, axis, theta)) >= threshold;
    };
    double lo = 0.0;
    double hi = theta_max;
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace

void PlannerState::reset() {
    has_prev = false;
    prev_attitude = Mat3::Identity();
    prev_omega_raw = Vec3::Zero();
    omega_filt = Vec3::Zero();
    omega_dot_filt = Vec3::Zero();
    prev_t = 0.0;
}

double solve_tilt_angle(const Vec3& b_3r, const Vec3& f_r, double r_xy,
                        int iterations) {
    const double fn = f_r.norm();
    const double threshold = std::sqrt(std::max(fn * fn - r_xy * r_xy, 0.0));
    if (f_r.dot(b_3r) >= threshold) {
        return 0.0;
    }
    const Vec3 cross = b_3r.cross(f_r);
    const double cn = cross.norm();
    if (cn <= kDegenerate * fn) {
        throw DegenerateAxis("solve_tilt_angle: f_r anti-parallel to b_3r");
    }
    const double theta_max = std::atan2(cn, b_3r.dot(f_r));
    return bisect_tilt(b_3r, f_r, cross / cn, theta_max, threshold, iterations);
}

Rotation build_desired_rotation(const Vec3& b_3d, const Vec3& b_1r) {
    Vec3 b_2d = b_3d.cross(b_1r);
    const double n = b_2d.norm();
    if (n < 1e-9) {
        throw DegenerateHeading("build_desired_rotation: b_3d parallel to b_1r");
    }
    b_2d /= n;
    const Vec3 b_1d = b_2d.cross(b_3d).normalized();
    Rotation r;
    r.col(0) = b_1d;
    r.col(1) = b_2d;
    r.col(2) = b_3d;
    return r;
}

DesiredAttitude plan(const Vec3& f_r, const Rotation& r_r, const LateralBoundSet& set,
                     PlannerState& state, double t) {
    DesiredAttitude out;
    out.feasible_ref = set.orientation_feasible(f_r, r_r, t);

    if (out.feasible_ref) {
        out.attitude = r_r;
    } else {
        // infeasible reference implies f_r != 0 (R(0) = SO(3))
        const Vec3 b_3r = r_r.col(2);
        const Vec3 b_1r = r_r.col(0);
        const double fn = f_r.norm();
        const Vec3 f_hat = f_r / fn;

        Vec3 b_3d;
        double threshold;
        switch (set.kind()) {
            case BoundKind::Underactuated:
                threshold = fn;  // exact alignment
                break;
            case BoundKind::Cylindric: {
                const double r = set.radius(t);
                threshold = (r < kTinyRadius)
                                ? fn
                                : std::sqrt(std::max(fn * fn - r * r, 0.0));
                break;
            }
            case BoundKind::Conic:
                threshold = fn * std::cos(set.alpha());
                break;
        }
        if (threshold >= fn) {
            b_3d = f_hat;  // only the aligned axis is feasible
        } else {
            const Vec3 cross = b_3r.cross(f_r);
            const double cn = cross.norm();
            Vec3 axis;
            if (cn > kDegenerate * fn) {
                axis = cross / cn;
            } else {
                // anti-parallel tie-break: rotate in the plane containing b_1r
                axis = (b_1r - b_1r.dot(f_hat) * f_hat).normalized();
            }
            const double theta_max = std::atan2(cn, b_3r.dot(f_r));
            const double theta =
                bisect_tilt(b_3r, f_r, axis, theta_max, threshold, state.iterations);
            b_3d = rodrigues(b_3r, axis, theta);
        }

        if (b_3d.cross(b_1r).norm() < 1e-9) {
            // thrust axis landed on the heading axis; fall back to b_2r
            const Vec3 b_1d = r_r.col(1).cross(b_3d).normalized();
            out.attitude.col(0) = b_1d;
            out.attitude.col(1) = b_3d.cross(b_1d);
            out.attitude.col(2) = b_3d;
        } else {
            out.attitude = build_desired_rotation(b_3d, b_1r);
        }
    }
    assert(set.orientation_feasible(f_r, out.attitude, t));

    // w_d / dw_d by backward differences of the R_d history, low-passed
    if (state.has_prev) {
        const double dt = t - state.prev_t;
        if (dt > 0.0) {
            const Vec3 omega_raw =
                log_map(state.prev_attitude.transpose() * out.attitude) / dt;
            const Vec3 omega_dot_raw = (omega_raw - state.prev_omega_raw) / dt;
            const double alpha =
                state.filter_tau > 0.0 ? dt / (state.filter_tau + dt) : 1.0;
            state.omega_filt += alpha * (omega_raw - state.omega_filt);
            state.omega_dot_filt += alpha * (omega_dot_raw - state.omega_dot_filt);
            state.prev_omega_raw = omega_raw;
        }
    }
    out.angular_velocity = state.omega_filt;
    out.angular_acceleration = state.omega_dot_filt;
    state.prev_attitude = out.attitude;
    state.prev_t = t;
    state.has_prev = true;
    return out;
}

}  // namespace lbf

#pragma once

#include "lbf/geometry.hpp"
#include "lbf/lbf_sets.hpp"

namespace lbf {

/// Desired attitude chosen each control step: feasible for the current
/// reference force and closest (in the 1 - b3r.b3 cost) to the reference.
struct DesiredAttitude {
    Rotation attitude = Mat3::Identity();       // R_d
    Vec3 angular_velocity = Vec3::Zero();       // w_d, body
    Vec3 angular_acceleration = Vec3::Zero();   // dw_d/dt, body
    bool feasible_ref = true;                   // R_d == R_r was possible
};

/// History carried across control steps: previous R_d samples for the
/// finite-difference estimates of w_d and dw_d, plus solver settings.
struct PlannerState {
    int iterations = 40;        // bisection depth
    double filter_tau = 0.02;   // low-pass time constant for w_d, s (0 = off)

    // differencing history
    bool has_prev = false;
    Rotation prev_attitude = Mat3::Identity();
    Vec3 prev_omega_raw = Vec3::Zero();
    Vec3 omega_filt = Vec3::Zero();
    Vec3 omega_dot_filt = Vec3::Zero();
    double prev_t = 0.0;

    void reset();
};

/// Minimal tilt of b_3r toward f_r that makes the cylindric feasibility
/// inequality f_r . b3(theta) >= sqrt(|f_r|^2 - r_xy^2) hold, solved by
/// bisection on [0, angle(b_3r, f_r)]. Returns 0 when the reference axis is
/// already feasible. Accuracy: theta_max / 2^iterations above the optimum,
/// never below (the result is always feasible).
///
/// Throws DegenerateAxis when b_3r x f_r vanishes while the direct test
/// fails (f_r anti-parallel to b_3r); plan() resolves that case with a
/// deterministic tie-break axis.
double solve_tilt_angle(const Vec3& b_3r, const Vec3& f_r, double r_xy,
                        int iterations);

/// Assembles R_d from the desired thrust axis and the reference heading:
/// R_d = [ (b_3d x b_1r) x b_3d, b_3d x b_1r, b_3d ], columns normalized.
/// Throws DegenerateHeading when b_3d is parallel to b_1r.
Rotation build_desired_rotation(const Vec3& b_3d, const Vec3& b_1r);

/// One planning step: returns R_d in the feasible set for f_r, equal to R_r
/// whenever R_r itself is feasible, and otherwise the cost-minimal tilt of
/// the reference thrust axis. w_d and dw_d come from backward differences of
/// the R_d history (zero on the first call).
DesiredAttitude plan(const Vec3& f_r, const Rotation& r_r, const LateralBoundSet& set,
                     PlannerState& state, double t);

}  // namespace lbf

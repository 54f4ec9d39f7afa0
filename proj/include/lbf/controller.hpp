#pragma once

#include "lbf/geometry.hpp"
#include "lbf/lbf_sets.hpp"
#include "lbf/planner.hpp"
#include "lbf/trajectories.hpp"
#include "lbf/vehicle.hpp"

namespace lbf {

/// Control gains. K_p and K_v are SPD matrices; the attitude gains are the
/// scalars of K_R = k_R I and K_w = k_w I.
struct Gains {
    Mat3 kp = 20.0 * Mat3::Identity();   // N/m
    Mat3 kv = 8.0 * Mat3::Identity();    // N s/m
    double kr = 4.0;                     // N m
    double komega = 0.8;                 // N m s

    Gains() = default;
    Gains(double kp_scalar, double kv_scalar, double kr_scalar, double komega_scalar);
};

struct ControlDiagnostics {
    Vec3 e_p = Vec3::Zero();
    Vec3 e_v = Vec3::Zero();
    Vec3 e_R = Vec3::Zero();
    Vec3 e_omega = Vec3::Zero();
    Vec3 e_R_ref = Vec3::Zero();       // attitude error of R_d w.r.t. R_r
    Vec3 e_omega_ref = Vec3::Zero();   // w_d - R_d R_r^T w_r
    Vec3 f_r = Vec3::Zero();           // world reference force
    bool lateral_saturated = false;
    bool u3_clamped = false;
    bool feasible_ref = true;
};

struct ControlOutput {
    BodyForce u1 = Vec3::Zero();
    Vec3 u2 = Vec3::Zero();
    DesiredAttitude desired;
    ControlDiagnostics diag;
};

/// World-frame reference force f_r = m p_ddot_r + m g e3 - K_p e_p - K_v e_v.
Vec3 reference_force(const ReferenceSample& sample, const RigidBodyState& state,
                     const Gains& gains, const VehicleParams& params);

/// Body-frame force command: f_r projected on the body axes with the lateral
/// part saturated into U_xy(t) and u3 clamped to [0, inf). The optional flags
/// report which projections were active.
BodyForce force_command(const Vec3& f_r, const Rotation& r, const LateralBoundSet& set,
                        double t, bool* lateral_saturated = nullptr,
                        bool* u3_clamped = nullptr);

/// Attitude tracking moment
/// u2 = w x Jw - k_R e_R - k_w e_w - J(hat(w) R^T R_d w_d - R^T R_d dw_d).
Vec3 moment_command(const RigidBodyState& state, const DesiredAttitude& des,
                    const Gains& gains, const VehicleParams& params);

/// Full control pipeline: reference force, attitude planning, force and
/// moment commands, with all tracking errors reported as diagnostics.
ControlOutput control_step(const ReferenceSample& sample, const RigidBodyState& state,
                           const LateralBoundSet& set, const Gains& gains,
                           const VehicleParams& params, PlannerState& planner,
                           double t);

}  // namespace lbf

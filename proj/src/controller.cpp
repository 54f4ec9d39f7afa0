#include "lbf/controller.hpp"

#include "lbf/errors.hpp"

namespace lbf {

Gains::Gains(double kp_scalar, double kv_scalar, double kr_scalar, double komega_scalar)
    : kp(kp_scalar * Mat3::Identity()),
      kv(kv_scalar * Mat3::Identity()),
      kr(kr_scalar),
      komega(komega_scalar) {
    if (kp_scalar <= 0.0 || kv_scalar <= 0.0 || kr_scalar <= 0.0 || komega_scalar <= 0.0) {
        throw ConfigError("gains must be positive");
    }
}

Vec3 reference_force(const ReferenceSample& sample, const RigidBodyState& state,
                     const Gains& gains, const VehicleParams& params) {
    const Vec3 e_p = state.position - sample.position;
    const Vec3 e_v = state.velocity - sample.velocity;
    return params.mass * sample.acceleration +
           params.mass * params.gravity * Vec3::UnitZ() - gains.kp * e_p -
           gains.kv * e_v;
}

BodyForce force_command(const Vec3& f_r, const Rotation& r, const LateralBoundSet& set,
                        double t, bool* lateral_saturated, bool* u3_clamped) {
    const Vec3 body = r.transpose() * f_r;
    double u3 = body.z();
    const bool clamped = u3 < 0.0;
    if (clamped) {
        u3 = 0.0;  // propellers cannot push along -b3
    }
    const Eigen::Vector2d lateral = set.saturate_lateral(body.head<2>(), u3, t);
    if (lateral_saturated != nullptr) {
        *lateral_saturated = (lateral - body.head<2>()).norm() > 0.0;
    }
    if (u3_clamped != nullptr) {
        *u3_clamped = clamped;
    }
    return BodyForce(lateral.x(), lateral.y(), u3);
}

Vec3 moment_command(const RigidBodyState& state, const DesiredAttitude& des,
                    const Gains& gains, const VehicleParams& params) {
    const Vec3& w = state.angular_velocity;
    const Mat3 r_rd = state.attitude.transpose() * des.attitude;
    const Vec3 e_r = attitude_error(state.attitude, des.attitude);
    const Vec3 e_w = w - r_rd * des.angular_velocity;
    return w.cross(params.inertia * w) - gains.kr * e_r - gains.komega * e_w -
           params.inertia * (hat(w) * (r_rd * des.angular_velocity) -
                             r_rd * des.angular_acceleration);
}

ControlOutput control_step(const ReferenceSample& sample, const RigidBodyState& state,
                           const LateralBoundSet& set, const Gains& gains,
                           const VehicleParams& params, PlannerState& planner,
                           double t) {
    ControlOutput out;
    out.diag.e_p = state.position - sample.position;
    out.diag.e_v = state.velocity - sample.velocity;
    out.diag.f_r = reference_force(sample, state, gains, params);

    out.desired = plan(out.diag.f_r, sample.attitude, set, planner, t);

    out.u1 = force_command(out.diag.f_r, state.attitude, set, t,
                           &out.diag.lateral_saturated, &out.diag.u3_clamped);
    out.u2 = moment_command(state, out.desired, gains, params);

    out.diag.e_R = attitude_error(state.attitude, out.desired.attitude);
    out.diag.e_omega = angular_velocity_error(state.angular_velocity, state.attitude,
                                              out.desired.attitude,
                                              out.desired.angular_velocity);
    out.diag.e_R_ref = attitude_error(out.desired.attitude, sample.attitude);
    out.diag.e_omega_ref =
        out.desired.angular_velocity -
        out.desired.attitude * sample.attitude.transpose() * sample.angular_velocity;
    out.diag.feasible_ref = out.desired.feasible_ref;
    return out;
}

}  // namespace lbf

#include "lbf/baseline.hpp"

namespace lbf {

ControlOutput baseline_step(const ReferenceSample& sample, const RigidBodyState& state,
                            const Gains& gains, const VehicleParams& params) {
    ControlOutput out;
    out.diag.e_p = state.position - sample.position;
    out.diag.e_v = state.velocity - sample.velocity;
    out.diag.f_r = reference_force(sample, state, gains, params);

    out.desired.attitude = sample.attitude;
    out.desired.angular_velocity = sample.angular_velocity;
    out.desired.angular_acceleration = sample.angular_acceleration;
    out.desired.feasible_ref = true;

    out.u1 = state.attitude.transpose() * out.diag.f_r;
    out.u2 = moment_command(state, out.desired, gains, params);

    out.diag.e_R = attitude_error(state.attitude, out.desired.attitude);
    out.diag.e_omega = angular_velocity_error(state.angular_velocity, state.attitude,
                                              out.desired.attitude,
                                              out.desired.angular_velocity);
    return out;
}

}  // namespace lbf

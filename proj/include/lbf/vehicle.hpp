#pragma once

#include "lbf/geometry.hpp"
#include "lbf/lbf_sets.hpp"

namespace lbf {

/// Rigid-body parameters. The inertia matrix must be symmetric positive
/// definite; its inverse is cached at construction.
struct VehicleParams {
    double mass = 1.8;                      // kg
    Mat3 inertia = Mat3::Identity();        // kg m^2, body frame
    double gravity = 9.81;                  // m/s^2
    Mat3 inertia_inv = Mat3::Identity();

    VehicleParams() = default;
    VehicleParams(double m, const Mat3& j, double g = 9.81);

    static VehicleParams tilt_hex();
};

/// Full rigid-body state: q = (p, R) plus world velocity and body rates.
struct RigidBodyState {
    Vec3 position = Vec3::Zero();           // m, world
    Vec3 velocity = Vec3::Zero();           // m/s, world
    Rotation attitude = Mat3::Identity();   // world from body
    Vec3 angular_velocity = Vec3::Zero();   // rad/s, body
};

/// Newton-Euler state derivative for a given body wrench.
struct StateDerivative {
    Vec3 dp;       // = v
    Vec3 dv;       // = -g e3 + R u1 / m
    Vec3 domega;   // = J^-1 (-w x Jw + u2)
    Mat3 dR;       // = R hat(w)
};

StateDerivative dynamics_derivative(const RigidBodyState& s, const BodyForce& u1,
                                    const Vec3& u2, const VehicleParams& params);

/// One fixed step of 4th-order Runge-Kutta with the attitude advanced on the
/// manifold: each stage composes R <- R0 * exp(hat(phi)) with the incremental
/// rotation vector phi integrated alongside (p, v, w). Inputs are held
/// constant over the step. Requires dt in (0, 0.01].
RigidBodyState integrate_step(const RigidBodyState& s, const BodyForce& u1,
                              const Vec3& u2, const VehicleParams& params, double dt);

}  // namespace lbf

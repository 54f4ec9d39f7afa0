#include "lbf/vehicle.hpp"

#include <cassert>

#include <Eigen/Eigenvalues>

#include "lbf/errors.hpp"

namespace lbf {

VehicleParams::VehicleParams(double m, const Mat3& j, double g)
    : mass(m), inertia(j), gravity(g) {
    if (!(m > 0.0) || !(g > 0.0)) {
        throw ConfigError("vehicle params: mass and gravity must be positive");
    }
    if ((j - j.transpose()).norm() > 1e-9 * j.norm()) {
        throw ConfigError("vehicle params: inertia must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Mat3> eig(j);
    if (eig.eigenvalues().minCoeff() <= 0.0) {
        throw ConfigError("vehicle params: inertia must be positive definite");
    }
    inertia_inv = j.inverse();
}

VehicleParams VehicleParams::tilt_hex() {
    Mat3 j = Vec3(0.04, 0.04, 0.07).asDiagonal();
    return VehicleParams(1.8, j);
}

StateDerivative dynamics_derivative(const RigidBodyState& s, const BodyForce& u1,
                                    const Vec3& u2, const VehicleParams& params) {
    StateDerivative d;
    d.dp = s.velocity;
    d.dv = Vec3(0.0, 0.0, -params.gravity) + s.attitude * u1 / params.mass;
    d.domega = params.inertia_inv *
               (-s.angular_velocity.cross(params.inertia * s.angular_velocity) + u2);
    d.dR = s.attitude * hat(s.angular_velocity);
    return d;
}

namespace {

// dexp^-1 on so(3), truncated to the terms needed for 4th-order accuracy:
// dexpinv(u, v) = v - 1/2 u x v + 1/12 u x (u x v)
Vec3 dexpinv(const Vec3& u, const Vec3& v) {
    const Vec3 uv = u.cross(v);
    return v - 0.5 * uv + (1.0 / 12.0) * u.cross(uv);
}

struct StageRates {
    Vec3 dp, dv, domega, dphi;
};

}  // namespace

RigidBodyState integrate_step(const RigidBodyState& s, const BodyForce& u1,
                              const Vec3& u2, const VehicleParams& params, double dt) {
    assert(dt > 0.0 && dt <= 0.01);

    // Runge-Kutta-Munthe-Kaas: the attitude is parametrized over the step by
    // the incremental rotation vector phi, R = R0 exp(hat(phi)).
    const auto eval = [&](const Vec3& p, const Vec3& v, const Vec3& w,
                          const Vec3& phi) -> StageRates {
        RigidBodyState stage;
        stage.position = p;
        stage.velocity = v;
        stage.angular_velocity = w;
        stage.attitude = s.attitude * exp_map(phi);
        const StateDerivative d = dynamics_derivative(stage, u1, u2, params);
        return {d.dp, d.dv, d.domega, dexpinv(phi, w)};
    };

    const Vec3 p0 = s.position, v0 = s.velocity, w0 = s.angular_velocity;
    const double h = dt;

    const StageRates k1 = eval(p0, v0, w0, Vec3::Zero());
    const StageRates k2 = eval(p0 + 0.5 * h * k1.dp, v0 + 0.5 * h * k1.dv,
                               w0 + 0.5 * h * k1.domega, 0.5 * h * k1.dphi);
    const StageRates k3 = eval(p0 + 0.5 * h * k2.dp, v0 + 0.5 * h * k2.dv,
                               w0 + 0.5 * h * k2.domega, 0.5 * h * k2.dphi);
    const StageRates k4 = eval(p0 + h * k3.dp, v0 + h * k3.dv,
                               w0 + h * k3.domega, h * k3.dphi);

    RigidBodyState out;
    out.position = p0 + (h / 6.0) * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
    out.velocity = v0 + (h / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
    out.angular_velocity =
        w0 + (h / 6.0) * (k1.domega + 2.0 * k2.domega + 2.0 * k3.domega + k4.domega);
    const Vec3 phi = (h / 6.0) * (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi);
    out.attitude = s.attitude * exp_map(phi);
    restore_rotation(out.attitude);
    return out;
}

}  // namespace lbf

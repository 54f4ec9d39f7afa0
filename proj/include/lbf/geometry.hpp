#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "lbf/errors.hpp"

namespace lbf {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Rotation matrices are stored as plain 3x3 matrices (world-from-body,
/// columns b1 b2 b3). Orthonormality is restored by the helpers below when
/// round-off drift exceeds kRotationDriftTol.
using Rotation = Eigen::Matrix3d;

inline constexpr double kRotationDriftTol = 1e-9;

/// Skew-symmetric matrix of v, so that hat(v) * w == v.cross(w).
inline Mat3 hat(const Vec3& v) {
    Mat3 m;
    m <<    0.0, -v.z(),  v.y(),
          v.z(),    0.0, -v.x(),
         -v.y(),  v.x(),    0.0;
    return m;
}

/// Inverse of hat(). Requires ||M + M^T||_F < 1e-8.
inline Vec3 vee(const Mat3& m) {
    if ((m + m.transpose()).norm() >= 1e-8) {
        throw NotSkew("vee: matrix is not skew-symmetric");
    }
    return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

/// Frobenius distance of R^T R from the identity.
inline double orthonormality_error(const Mat3& r) {
    return (r.transpose() * r - Mat3::Identity()).norm();
}

/// Closest rotation matrix in the Frobenius sense (polar decomposition).
inline Rotation orthonormalized(const Mat3& r) {
    Eigen::JacobiSVD<Mat3> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 u = svd.matrixU();
    Mat3 v = svd.matrixV();
    if ((u * v.transpose()).determinant() < 0.0) {
        u.col(2) = -u.col(2);
    }
    return u * v.transpose();
}

/// Re-orthonormalizes in place when drift exceeds the module tolerance.
inline void restore_rotation(Rotation& r, double tol = kRotationDriftTol) {
    if (orthonormality_error(r) > tol) {
        r = orthonormalized(r);
    }
}

/// Rotation error function d(R1, R2) = 1/2 tr(I - R2^T R1), range [0, 2].
inline double rotation_distance(const Rotation& r1, const Rotation& r2) {
    return 0.5 * (Mat3::Identity() - r2.transpose() * r1).trace();
}

/// Attitude tracking error e_R = 1/2 (R_d^T R - R^T R_d)^vee.
inline Vec3 attitude_error(const Rotation& r, const Rotation& r_d) {
    return vee(0.5 * (r_d.transpose() * r - r.transpose() * r_d));
}

/// Angular-velocity tracking error e_w = w - R^T R_d w_d.
inline Vec3 angular_velocity_error(const Vec3& omega, const Rotation& r,
                                   const Rotation& r_d, const Vec3& omega_d) {
    return omega - r.transpose() * r_d * omega_d;
}

/// Rotates the unit vector v about the unit axis k by angle theta.
inline Vec3 rodrigues(const Vec3& v, const Vec3& k, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return v * c + k.cross(v) * s + k * (k.dot(v)) * (1.0 - c);
}

/// Exponential map so(3) -> SO(3) via the Rodrigues formula.
inline Rotation exp_map(const Vec3& phi) {
    const double angle = phi.norm();
    if (angle < 1e-12) {
        // second-order series keeps the result orthonormal to round-off
        const Mat3 k = hat(phi);
        return Mat3::Identity() + k + 0.5 * k * k;
    }
    const Vec3 axis = phi / angle;
    const Mat3 k = hat(axis);
    return Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * k * k;
}

/// Logarithm map SO(3) -> so(3) as an axis-angle vector.
/// Near angle pi the axis is recovered from the largest diagonal entry,
/// where the standard sin-based formula loses precision.
inline Vec3 log_map(const Rotation& r) {
    const double cos_angle = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
    const double angle = std::acos(cos_angle);
    const Vec3 w(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));

    if (angle < 1e-7) {
        return 0.5 * w;  // R ~ I + hat(phi)
    }
    if (angle < M_PI - 1e-5) {
        return (0.5 * angle / std::sin(angle)) * w;
    }

    // angle ~ pi: R + I ~ 2 a a^T, take the column with the largest diagonal
    int i = 0;
    r.diagonal().maxCoeff(&i);
    Vec3 axis = (r + Mat3::Identity()).col(i);
    axis.normalize();
    // fix the sign using whichever off-diagonal component survives
    if (w.norm() > 1e-12 && axis.dot(w) < 0.0) {
        axis = -axis;
    }
    return angle * axis;
}

}  // namespace lbf

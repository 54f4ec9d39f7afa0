#pragma once

#include <vector>

#include "lbf/geometry.hpp"

namespace lbf {

/// Total control force in the body frame, components (u1, u2, u3), N.
using BodyForce = Eigen::Vector3d;

/// Absolute slack used by membership tests so that forces produced by the
/// saturation operator itself always test as members.
inline constexpr double kMembershipTol = 1e-9;

enum class BoundKind { Underactuated, Conic, Cylindric };

/// Admissible total-force set U1: the lateral (body-xy) force lives in a
/// bounding set U_xy while the principal component u3 must be nonnegative.
///
/// Variants:
///   Underactuated  U_xy = {0}
///   Conic          |lateral| <= tan(alpha) * u3
///   Cylindric      |lateral| <= r_xy, optionally time-varying r_xy(t)
class LateralBoundSet {
public:
    static LateralBoundSet underactuated();
    static LateralBoundSet conic(double alpha_rad);
    static LateralBoundSet cylindric(double r_xy);
    /// Piecewise-linear radius schedule as (time s, radius N) knots;
    /// clamped to the first/last knot outside the spanned interval.
    static LateralBoundSet cylindric(std::vector<std::pair<double, double>> schedule);

    BoundKind kind() const { return kind_; }
    double alpha() const { return alpha_; }

    /// Cylinder radius at time t (0 for underactuated sets).
    double radius(double t) const;

    /// Radius of the lateral disc available at the given u3 and time.
    double lateral_radius(double u3, double t) const;

    /// Membership test for a body-frame force (lateral in U_xy, u3 >= 0).
    bool contains(const BodyForce& f, double t = 0.0) const;

    /// Direction-preserving projection of a lateral force demand into
    /// U_xy(t): returns the input unchanged when it is already a member,
    /// otherwise the closest collinear member.
    Eigen::Vector2d saturate_lateral(const Eigen::Vector2d& lateral, double u3,
                                     double t = 0.0) const;

    /// Whether orientation R allows applying the world force f_r, i.e.
    /// R^T f_r is a member of U1(t).
    bool orientation_feasible(const Vec3& f_r_world, const Rotation& r,
                              double t = 0.0) const;

    /// Signed distance of a body force from the boundary of U1(t),
    /// positive inside. Exact for cylindric sets; for conic sets the
    /// distance to the cone wall is used.
    double boundary_margin(const BodyForce& f, double t = 0.0) const;

    /// Closed-form cylindric feasibility: f_r^T b3 >= sqrt(|f_r|^2 - r^2)
    /// when |f_r| >= r, else f_r^T b3 >= 0.
    static bool cylindric_feasible(const Vec3& f_r_world, const Vec3& b3, double r);

private:
    LateralBoundSet() = default;

    BoundKind kind_ = BoundKind::Cylindric;
    double alpha_ = 0.0;      // conic half-angle, rad
    double tan_alpha_ = 0.0;
    std::vector<std::pair<double, double>> schedule_;  // (t, r_xy)
};

}  // namespace lbf

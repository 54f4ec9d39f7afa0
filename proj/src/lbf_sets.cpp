#include "lbf/lbf_sets.hpp"

#include <algorithm>
#include <cmath>

#include "lbf/errors.hpp"

namespace lbf {

LateralBoundSet LateralBoundSet::underactuated() {
    LateralBoundSet s;
    s.kind_ = BoundKind::Underactuated;
    s.schedule_ = {{0.0, 0.0}};
    return s;
}

LateralBoundSet LateralBoundSet::conic(double alpha_rad) {
    if (!(alpha_rad > 0.0 && alpha_rad < M_PI / 2.0)) {
        throw ConfigError("conic set: alpha must lie in (0, 90) degrees");
    }
    LateralBoundSet s;
    s.kind_ = BoundKind::Conic;
    s.alpha_ = alpha_rad;
    s.tan_alpha_ = std::tan(alpha_rad);
    return s;
}

LateralBoundSet LateralBoundSet::cylindric(double r_xy) {
    return cylindric(std::vector<std::pair<double, double>>{{0.0, r_xy}});
}

LateralBoundSet LateralBoundSet::cylindric(std::vector<std::pair<double, double>> schedule) {
    if (schedule.empty()) {
        throw ConfigError("cylindric set: empty radius schedule");
    }
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i].second < 0.0) {
            throw ConfigError("cylindric set: negative radius in schedule");
        }
        if (i > 0 && schedule[i].first <= schedule[i - 1].first) {
            throw ConfigError("cylindric set: schedule times must increase");
        }
    }
    LateralBoundSet s;
    s.kind_ = BoundKind::Cylindric;
    s.schedule_ = std::move(schedule);
    return s;
}

double LateralBoundSet::radius(double t) const {
    if (kind_ == BoundKind::Conic) {
        return 0.0;
    }
    const auto& sc = schedule_;
    if (t <= sc.front().first) return sc.front().second;
    if (t >= sc.back().first) return sc.back().second;
    for (std::size_t i = 1; i < sc.size(); ++i) {
        if (t <= sc[i].first) {
            const double w = (t - sc[i - 1].first) / (sc[i].first - sc[i - 1].first);
            return sc[i - 1].second + w * (sc[i].second - sc[i - 1].second);
        }
    }
    return sc.back().second;
}

double LateralBoundSet::lateral_radius(double u3, double t) const {
    switch (kind_) {
        case BoundKind::Underactuated: return 0.0;
        case BoundKind::Conic: return tan_alpha_ * std::max(u3, 0.0);
        case BoundKind::Cylindric: return radius(t);
    }
    return 0.0;
}

bool LateralBoundSet::contains(const BodyForce& f, double t) const {
    if (f.z() < -kMembershipTol) {
        return false;
    }
    const double lat = f.head<2>().norm();
    return lat <= lateral_radius(f.z(), t) + kMembershipTol;
}

Eigen::Vector2d LateralBoundSet::saturate_lateral(const Eigen::Vector2d& lateral,
                                                  double u3, double t) const {
    const double bound = lateral_radius(u3, t);
    if (bound <= 0.0) {
        return Eigen::Vector2d::Zero();
    }
    const double norm = lateral.norm();
    if (norm <= bound) {
        return lateral;
    }
    return lateral * (bound / norm);
}

bool LateralBoundSet::orientation_feasible(const Vec3& f_r_world, const Rotation& r,
                                           double t) const {
    return contains(r.transpose() * f_r_world, t);
}

double LateralBoundSet::boundary_margin(const BodyForce& f, double t) const {
    const double lat = f.head<2>().norm();
    const double u3 = f.z();
    if (kind_ == BoundKind::Conic) {
        // signed distance to the cone wall; negative below the apex plane
        const double wall = u3 * std::sin(alpha_) - lat * std::cos(alpha_);
        return (u3 >= 0.0) ? wall : std::min(wall, u3);
    }
    const double r = radius(t);
    if (u3 >= 0.0 && lat <= r) {
        return std::min(r - lat, u3);
    }
    const double dl = std::max(lat - r, 0.0);
    const double dz = std::max(-u3, 0.0);
    return -std::hypot(dl, dz);
}

bool LateralBoundSet::cylindric_feasible(const Vec3& f_r_world, const Vec3& b3, double r) {
    const double fn = f_r_world.norm();
    const double along = f_r_world.dot(b3);
    if (fn <= r) {
        return along >= -kMembershipTol;
    }
    return along >= std::sqrt(fn * fn - r * r) - kMembershipTol;
}

}  // namespace lbf

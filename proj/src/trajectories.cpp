#include "lbf/trajectories.hpp"

#include <algorithm>
#include <cmath>

#include "lbf/errors.hpp"

namespace lbf {

// ---------------------------------------------------------------------------
// HoverProgram

HoverProgram::HoverProgram(const Vec3& position, double duration)
    : position_(position), duration_(duration) {
    if (duration <= 0.0) throw ConfigError("hover: duration must be positive");
}

PosSample HoverProgram::at(double) const {
    PosSample s;
    s.p = position_;
    return s;
}

// ---------------------------------------------------------------------------
// ChirpProgram
//
// The rising half of the acceleration envelope is
//   [0, b]        a(t) = s t^2 / (2b)
//   [b, tp - b]   a(t) = s (t - b/2)
//   [tp - b, tp]  a(t) = a_max - s (tp - t)^2 / (2b)
// with s = a_max / (tp - b); the falling half mirrors it. The phase follows
// from dphi/dt = sqrt(a(t) / A), integrated in closed form per piece.

ChirpProgram::ChirpProgram(double amplitude, double accel_max, double duration,
                           const Vec3& axis, const Vec3& base, double blend)
    : amplitude_(amplitude),
      accel_max_(accel_max),
      duration_(duration),
      axis_(axis.normalized()),
      base_(base),
      blend_(blend) {
    if (amplitude <= 0.0 || accel_max <= 0.0) {
        throw ConfigError("chirp: amplitude and accel_max must be positive");
    }
    peak_time_ = 0.5 * duration;
    if (blend_ <= 0.0 || peak_time_ <= 2.0 * blend_) {
        throw ConfigError("chirp: duration too short for the blend width");
    }
    slope_ = accel_max_ / (peak_time_ - blend_);
    double dphi, ddphi;
    half_phase(peak_time_, phi_peak_, dphi, ddphi);
}

double ChirpProgram::accel_envelope(double t) const {
    t = std::clamp(t, 0.0, duration_);
    const double tm = std::min(t, duration_ - t);  // mirrored time in [0, tp]
    if (tm <= blend_) {
        return slope_ * tm * tm / (2.0 * blend_);
    }
    if (tm <= peak_time_ - blend_) {
        return slope_ * (tm - 0.5 * blend_);
    }
    const double u = peak_time_ - tm;
    return accel_max_ - slope_ * u * u / (2.0 * blend_);
}

void ChirpProgram::half_phase(double t, double& phi, double& dphi, double& ddphi) const {
    // valid for t in [0, peak_time_]
    const double c = slope_ / (2.0 * blend_);
    const double sqrt_a = std::sqrt(1.0 / amplitude_);
    if (t <= blend_) {
        const double k = std::sqrt(c) * sqrt_a;
        phi = 0.5 * k * t * t;
        dphi = k * t;
        ddphi = k;
        return;
    }
    const double k = std::sqrt(c) * sqrt_a;
    double phi_b = 0.5 * k * blend_ * blend_;
    if (t <= peak_time_ - blend_) {
        const double x = t - 0.5 * blend_;
        const double x0 = 0.5 * blend_;
        phi = phi_b + (2.0 / 3.0) * std::sqrt(slope_ / amplitude_) *
                          (std::pow(x, 1.5) - std::pow(x0, 1.5));
        dphi = std::sqrt(slope_ * x / amplitude_);
        ddphi = 0.5 * std::sqrt(slope_ / (amplitude_ * x));
        return;
    }
    const double x1 = peak_time_ - blend_ - 0.5 * blend_;
    const double x0 = 0.5 * blend_;
    const double phi_lin = phi_b + (2.0 / 3.0) * std::sqrt(slope_ / amplitude_) *
                                       (std::pow(x1, 1.5) - std::pow(x0, 1.5));
    // I(u) = integral_0^u sqrt(a_max - c x^2) dx, u measured back from the peak
    const auto cap_integral = [&](double u) {
        const double root = std::sqrt(std::max(accel_max_ - c * u * u, 0.0));
        return 0.5 * u * root +
               0.5 * accel_max_ / std::sqrt(c) *
                   std::asin(std::clamp(u * std::sqrt(c / accel_max_), -1.0, 1.0));
    };
    const double u = peak_time_ - t;
    phi = phi_lin + sqrt_a * (cap_integral(blend_) - cap_integral(u));
    const double a_env = accel_max_ - c * u * u;
    dphi = std::sqrt(std::max(a_env, 0.0) / amplitude_);
    ddphi = c * u / std::sqrt(amplitude_ * std::max(a_env, 1e-12));
}

bool ChirpProgram::phase(double t, double& phi, double& dphi, double& ddphi) const {
    t = std::clamp(t, 0.0, duration_);
    if (t <= peak_time_) {
        half_phase(t, phi, dphi, ddphi);
    } else {
        // dphi/dt is symmetric about the peak
        double phi_m;
        half_phase(duration_ - t, phi_m, dphi, ddphi);
        phi = 2.0 * phi_peak_ - phi_m;
        ddphi = -ddphi;
    }
    return true;
}

PosSample ChirpProgram::at(double t) const {
    double phi, dphi, ddphi;
    phase(t, phi, dphi, ddphi);
    const double sp = std::sin(phi);
    const double cp = std::cos(phi);
    PosSample s;
    s.p = base_ + axis_ * (amplitude_ * sp);
    s.v = axis_ * (amplitude_ * dphi * cp);
    s.a = axis_ * (amplitude_ * (ddphi * cp - dphi * dphi * sp));
    return s;
}

double ChirpProgram::lateral_accel_envelope(double t) const {
    return accel_envelope(t) * axis_.head<2>().norm();
}

// ---------------------------------------------------------------------------
// MultiSineProgram

MultiSineProgram::MultiSineProgram(const Axis& x, const Axis& y, double duration,
                                   const Vec3& base)
    : x_(x), y_(y), duration_(duration), base_(base) {
    if (duration <= 0.0) throw ConfigError("multisine: duration must be positive");
}

PosSample MultiSineProgram::at(double t) const {
    PosSample s;
    s.p = base_;
    const Axis* axes[2] = {&x_, &y_};
    for (int i = 0; i < 2; ++i) {
        const Axis& a = *axes[i];
        const double w = 2.0 * M_PI * a.frequency;
        const double arg = w * t + a.phase;
        s.p[i] += a.amplitude * std::sin(arg);
        s.v[i] = a.amplitude * w * std::cos(arg);
        s.a[i] = -a.amplitude * w * w * std::sin(arg);
    }
    return s;
}

// ---------------------------------------------------------------------------
// PolynomialConnector

PolynomialConnector::PolynomialConnector(const PosSample& from, const PosSample& to,
                                         double duration)
    : duration_(duration) {
    if (duration <= 0.0) throw ConfigError("connector: duration must be positive");
    const double T = duration;
    Eigen::Matrix<double, 6, 6> m;
    // rows: p(0), v(0), a(0), p(T), v(T), a(T) against coefficients of t^0..t^5
    m << 1, 0, 0, 0, 0, 0,
         0, 1, 0, 0, 0, 0,
         0, 0, 2, 0, 0, 0,
         1, T, T * T, T * T * T, T * T * T * T, T * T * T * T * T,
         0, 1, 2 * T, 3 * T * T, 4 * T * T * T, 5 * T * T * T * T,
         0, 0, 2, 6 * T, 12 * T * T, 20 * T * T * T;
    const auto lu = m.partialPivLu();
    for (int axis = 0; axis < 3; ++axis) {
        Eigen::Matrix<double, 6, 1> rhs;
        rhs << from.p[axis], from.v[axis], from.a[axis],
               to.p[axis], to.v[axis], to.a[axis];
        coeffs_.row(axis) = lu.solve(rhs).transpose();
    }
}

PosSample PolynomialConnector::at(double t) const {
    t = std::clamp(t, 0.0, duration_);
    Eigen::Matrix<double, 6, 1> tp, tv, ta;
    tp << 1, t, t * t, t * t * t, t * t * t * t, t * t * t * t * t;
    tv << 0, 1, 2 * t, 3 * t * t, 4 * t * t * t, 5 * t * t * t * t;
    ta << 0, 0, 2, 6 * t, 12 * t * t, 20 * t * t * t;
    PosSample s;
    s.p = coeffs_ * tp;
    s.v = coeffs_ * tv;
    s.a = coeffs_ * ta;
    return s;
}

// ---------------------------------------------------------------------------
// CompositeProgram

CompositeProgram::CompositeProgram(
    std::vector<std::shared_ptr<const PositionProgram>> segments)
    : segments_(std::move(segments)) {
    if (segments_.empty()) throw ConfigError("composite: no segments");
    double acc = 0.0;
    for (const auto& seg : segments_) {
        offsets_.push_back(acc);
        acc += seg->duration();
    }
    duration_ = acc;
}

const PositionProgram& CompositeProgram::segment_at(double t, double& local) const {
    std::size_t i = segments_.size() - 1;
    while (i > 0 && t < offsets_[i]) --i;
    local = std::min(t - offsets_[i], segments_[i]->duration());
    return *segments_[i];
}

PosSample CompositeProgram::at(double t) const {
    double local;
    const PositionProgram& seg = segment_at(t, local);
    return seg.at(local);
}

double CompositeProgram::lateral_accel_envelope(double t) const {
    double local;
    const PositionProgram& seg = segment_at(t, local);
    return seg.lateral_accel_envelope(local);
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

void orientation_sample(const TrajectorySpec& spec, double t, ReferenceSample& out) {
    const OrientationProgram& o = spec.orientation;
    if (o.kind == OrientationProgram::Kind::Constant) {
        out.attitude = o.constant;
        return;
    }
    double phi = 0.0, dphi = 0.0, ddphi = 0.0;
    if (!(o.lock_to_position_phase && spec.position->phase(t, phi, dphi, ddphi))) {
        const double w = 2.0 * M_PI * o.frequency;
        phi = w * t;
        dphi = w;
        ddphi = 0.0;
    }
    const double theta = o.phase_sign * o.amplitude * std::sin(phi);
    const double dtheta = o.phase_sign * o.amplitude * std::cos(phi) * dphi;
    const double ddtheta = o.phase_sign * o.amplitude *
                           (std::cos(phi) * ddphi - std::sin(phi) * dphi * dphi);
    out.attitude = exp_map(o.axis * theta);
    out.angular_velocity = o.axis * dtheta;
    out.angular_acceleration = o.axis * ddtheta;
}

}  // namespace

ReferenceSample sample(const TrajectorySpec& spec, double t) {
    const double T = spec.duration();
    if (t < -1e-9 || t > T + 1e-9) {
        throw OutOfRange("trajectory sampled outside [0, duration]");
    }
    t = std::clamp(t, 0.0, T);
    ReferenceSample s;
    s.t = t;
    const PosSample ps = spec.position->at(t);
    s.position = ps.p;
    s.velocity = ps.v;
    s.acceleration = ps.a;
    orientation_sample(spec, t, s);
    return s;
}

std::pair<BodyForce, Vec3> nominal_inputs(const ReferenceSample& s,
                                          const VehicleParams& params) {
    const Vec3 world_force =
        params.mass * (Vec3(0.0, 0.0, params.gravity) + s.acceleration);
    const BodyForce u1 = s.attitude.transpose() * world_force;
    const Vec3 u2 = s.angular_velocity.cross(params.inertia * s.angular_velocity) +
                    params.inertia * s.angular_acceleration;
    return {u1, u2};
}

std::vector<FeasibilityRow> feasibility_report(const TrajectorySpec& spec,
                                               const LateralBoundSet& set,
                                               const VehicleParams& params, double dt) {
    if (dt <= 0.0) throw ConfigError("feasibility report: dt must be positive");
    std::vector<FeasibilityRow> rows;
    const double T = spec.duration();
    rows.reserve(static_cast<std::size_t>(T / dt) + 2);
    for (double t = 0.0; t <= T + 0.5 * dt; t += dt) {
        const double tc = std::min(t, T);
        const ReferenceSample s = sample(spec, tc);
        const auto [u1, u2] = nominal_inputs(s, params);
        FeasibilityRow row;
        row.t = tc;
        row.feasible = set.contains(u1, tc);
        row.margin = set.boundary_margin(u1, tc);
        row.envelope_margin =
            set.lateral_radius(u1.z(), tc) -
            params.mass * spec.position->lateral_accel_envelope(tc);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace lbf

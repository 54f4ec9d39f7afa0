#pragma once

#include <memory>
#include <vector>

#include "lbf/geometry.hpp"
#include "lbf/lbf_sets.hpp"
#include "lbf/vehicle.hpp"

namespace lbf {

/// Full-pose reference at one instant.
struct ReferenceSample {
    double t = 0.0;
    Vec3 position = Vec3::Zero();
    Vec3 velocity = Vec3::Zero();
    Vec3 acceleration = Vec3::Zero();
    Rotation attitude = Mat3::Identity();         // R_r
    Vec3 angular_velocity = Vec3::Zero();         // w_r, body
    Vec3 angular_acceleration = Vec3::Zero();     // dw_r/dt, body
};

struct PosSample {
    Vec3 p = Vec3::Zero();
    Vec3 v = Vec3::Zero();
    Vec3 a = Vec3::Zero();
};

/// Positional part of a reference trajectory, parametrized on [0, duration].
class PositionProgram {
public:
    virtual ~PositionProgram() = default;
    virtual double duration() const = 0;
    virtual PosSample at(double t) const = 0;

    /// Instantaneous oscillation phase when the program defines one
    /// (used to phase-lock orientation programs to a chirp).
    virtual bool phase(double /*t*/, double& /*phi*/, double& /*dphi*/,
                       double& /*ddphi*/) const {
        return false;
    }

    /// Envelope of the lateral (world-xy) acceleration magnitude; defaults
    /// to the pointwise value for programs without an analytic envelope.
    virtual double lateral_accel_envelope(double t) const {
        return at(t).a.head<2>().norm();
    }
};

/// Rest-to-rest hover reference.
class HoverProgram final : public PositionProgram {
public:
    HoverProgram(const Vec3& position, double duration);
    double duration() const override { return duration_; }
    PosSample at(double t) const override;

private:
    Vec3 position_;
    double duration_;
};

/// Sinusoid of constant amplitude along one world axis whose instantaneous
/// frequency is shaped so that the acceleration envelope A*(dphi/dt)^2
/// traces a triangle from 0 to accel_max at mid-span and back, with short
/// quadratic blends (width `blend`) keeping the profile C1.
class ChirpProgram final : public PositionProgram {
public:
    ChirpProgram(double amplitude, double accel_max, double duration,
                 const Vec3& axis = Vec3::UnitX(), const Vec3& base = Vec3::Zero(),
                 double blend = 3.0);

    double duration() const override { return duration_; }
    PosSample at(double t) const override;
    bool phase(double t, double& phi, double& dphi, double& ddphi) const override;
    double lateral_accel_envelope(double t) const override;

    /// Envelope of |p_ddot| along the chirp axis and its time derivative.
    double accel_envelope(double t) const;

private:
    void half_phase(double t, double& phi, double& dphi, double& ddphi) const;

    double amplitude_;
    double accel_max_;
    double duration_;
    Vec3 axis_;
    Vec3 base_;
    double blend_;       // quadratic blend width, s
    double slope_;       // envelope slope on the linear stretch
    double peak_time_;   // duration / 2
    double phi_peak_;    // phase accumulated over the rising half
};

/// Superposition of fixed-frequency sinusoids, one per world axis.
class MultiSineProgram final : public PositionProgram {
public:
    struct Axis {
        double amplitude = 0.0;  // m
        double frequency = 0.0;  // Hz
        double phase = 0.0;      // rad
    };

    MultiSineProgram(const Axis& x, const Axis& y, double duration,
                     const Vec3& base = Vec3::Zero());

    double duration() const override { return duration_; }
    PosSample at(double t) const override;

private:
    Axis x_, y_;
    double duration_;
    Vec3 base_;
};

/// Quintic polynomial (per axis) joining two full kinematic states, C2 at
/// both ends.
class PolynomialConnector final : public PositionProgram {
public:
    PolynomialConnector(const PosSample& from, const PosSample& to, double duration);

    double duration() const override { return duration_; }
    PosSample at(double t) const override;

private:
    Eigen::Matrix<double, 3, 6> coeffs_;  // per-axis quintic coefficients
    double duration_;
};

/// Ordered sequence of programs, each on its own local clock.
class CompositeProgram final : public PositionProgram {
public:
    explicit CompositeProgram(std::vector<std::shared_ptr<const PositionProgram>> segments);

    double duration() const override { return duration_; }
    PosSample at(double t) const override;
    double lateral_accel_envelope(double t) const override;

private:
    const PositionProgram& segment_at(double t, double& local) const;

    std::vector<std::shared_ptr<const PositionProgram>> segments_;
    std::vector<double> offsets_;
    double duration_;
};

/// Orientation part of the reference: constant, or a sinusoidal tilt about
/// a fixed world axis. The tilt phase either runs at a fixed frequency or
/// locks to the phase of the position program.
struct OrientationProgram {
    enum class Kind { Constant, AxisSine };

    Kind kind = Kind::Constant;
    Rotation constant = Mat3::Identity();
    Vec3 axis = Vec3::UnitY();
    double amplitude = 0.0;   // rad
    double frequency = 0.0;   // Hz, ignored when locked
    bool lock_to_position_phase = false;
    double phase_sign = 1.0;  // +1: tilt outward at the trajectory ends
};

struct TrajectorySpec {
    std::shared_ptr<const PositionProgram> position;
    OrientationProgram orientation;

    double duration() const { return position->duration(); }
};

/// Samples the full-pose reference. Throws OutOfRange outside [0, duration].
ReferenceSample sample(const TrajectorySpec& spec, double t);

/// Nominal input obtained by inverting the rigid-body dynamics along the
/// reference: u1 = R_r^T (m g e3 + m p_ddot_r), u2 = w_r x J w_r + J dw_r.
std::pair<BodyForce, Vec3> nominal_inputs(const ReferenceSample& s,
                                          const VehicleParams& params);

struct FeasibilityRow {
    double t = 0.0;
    bool feasible = false;     // u1 nominal inside U1(t)
    double margin = 0.0;       // signed distance to the boundary of U1(t)
    double envelope_margin = 0.0;  // lateral bound minus m * accel envelope
};

/// Per-sample feasibility of the nominal inputs (Definition-1 check) plus
/// the envelope-based margin used for phase segmentation.
std::vector<FeasibilityRow> feasibility_report(const TrajectorySpec& spec,
                                               const LateralBoundSet& set,
                                               const VehicleParams& params, double dt);

}  // namespace lbf

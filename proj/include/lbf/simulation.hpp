#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lbf/scenario.hpp"

namespace lbf {

/// Telemetry CSV schema version (see write_csv for the column list).
inline constexpr int kTelemetrySchemaVersion = 1;

/// One row per control step.
struct TelemetryRecord {
    double t = 0.0;
    Vec3 p = Vec3::Zero();
    Vec3 v = Vec3::Zero();
    Vec3 p_r = Vec3::Zero();
    Vec3 rpy_deg = Vec3::Zero();      // roll/pitch/yaw of R, ZYX convention
    Vec3 rpy_r_deg = Vec3::Zero();
    Vec3 rpy_d_deg = Vec3::Zero();
    Vec3 u1 = Vec3::Zero();
    Vec3 u2 = Vec3::Zero();
    Vec6 w = Vec6::Zero();            // rotor spin rates, Hz
    double ep_norm = 0.0;
    double dist_R_Rd = 0.0;
    double dist_Rd_Rr = 0.0;
    bool lateral_saturated = false;
    bool u3_clamped = false;
    bool rotor_saturated = false;
    bool feasible_ref = true;
};

struct TelemetryLog {
    std::vector<TelemetryRecord> records;
};

enum class RunStatus { Ok, Diverged };

/// Log-linear least-squares fit of a decaying signal. The fit runs over the
/// descent from the global peak down to kFitFloorRatio of it; for oscillatory
/// signals the local maxima (the descent envelope) are fitted instead of
/// every sample.
struct ExpFit {
    bool valid = false;
    double rate = 0.0;   // positive = decay
    double r2 = 0.0;
};

ExpFit fit_exponential_decay(const std::vector<double>& t, const std::vector<double>& y);

struct PhaseMetrics {
    double t_start = 0.0;
    double t_end = 0.0;
    double max_ep = 0.0;
    double max_pitch_err_deg = 0.0;     // |theta - theta_r|
    double max_pitch_dev_deg = 0.0;     // |theta_d - theta_r|
    double steady_pitch_err_deg = 0.0;  // excludes the first 2 s of the phase
};

struct MetricsSummary {
    std::string scenario;
    std::string status;
    double end_time = 0.0;
    double dt = 0.0;
    std::size_t steps = 0;
    double max_ep = 0.0;
    double final_ep = 0.0;
    double max_pitch_err_deg = 0.0;
    double max_pitch_dev_deg = 0.0;
    double lateral_sat_fraction = 0.0;
    double rotor_sat_fraction = 0.0;
    double u3_clamp_fraction = 0.0;
    double infeasible_ref_fraction = 0.0;   // from the feasibility report
    double t_ep_exceeds_half_m = -1.0;      // first |e_p| > 0.5 m, -1 if never
    double dist_rd_rr_settle_time = -1.0;   // last t with d(R_d,R_r) > 1e-9
    bool has_phases = false;                // envelope margin changed sign
    std::vector<PhaseMetrics> phases;       // 1 or 3 entries
    ExpFit ep_fit;
    ExpFit attitude_fit;                    // on d(R, R_d)
};

struct RunResult {
    RunStatus status = RunStatus::Ok;
    double end_time = 0.0;
    TelemetryLog log;
    MetricsSummary metrics;
};

/// Closed-loop simulation: sample reference -> control -> allocation ->
/// integrate, at 1/dt Hz, recording one telemetry row per step. Aborts with
/// Diverged when |e_p| exceeds 2 m.
RunResult run_scenario(const Scenario& scenario);

/// Deterministic aggregation of a telemetry log. Phase boundaries come from
/// the sign of the envelope margin in the feasibility report.
MetricsSummary metrics(const TelemetryLog& log, const Scenario& scenario,
                       RunStatus status, double end_time);

/// ZYX (yaw-pitch-roll) Euler angles in degrees, for telemetry only.
Vec3 euler_zyx_deg(const Rotation& r);

void write_csv(std::ostream& out, const TelemetryLog& log);
void write_metrics(std::ostream& out, const MetricsSummary& m,
                   std::optional<unsigned> seed = std::nullopt);
void write_feasibility(std::ostream& out, const std::vector<FeasibilityRow>& rows);

}  // namespace lbf

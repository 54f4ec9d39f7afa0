#include "lbf/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lbf/baseline.hpp"
#include "lbf/errors.hpp"

namespace lbf {

Vec3 euler_zyx_deg(const Rotation& r) {
    const double rad2deg = 180.0 / M_PI;
    const double sy = std::hypot(r(0, 0), r(1, 0));
    double roll, pitch, yaw;
    if (sy > 1e-9) {
        roll = std::atan2(r(2, 1), r(2, 2));
        pitch = std::atan2(-r(2, 0), sy);
        yaw = std::atan2(r(1, 0), r(0, 0));
    } else {
        roll = std::atan2(-r(1, 2), r(1, 1));
        pitch = std::atan2(-r(2, 0), sy);
        yaw = 0.0;
    }
    return Vec3(roll * rad2deg, pitch * rad2deg, yaw * rad2deg);
}

RunResult run_scenario(const Scenario& sc) {
    const RotorLayout layout(sc.rotor_config);
    PlannerState planner;
    planner.iterations = sc.planner_iterations;
    planner.filter_tau = sc.planner_filter_tau;

    RigidBodyState state = sc.initial;
    restore_rotation(state.attitude, 1e-12);

    const std::size_t n_steps = static_cast<std::size_t>(std::llround(sc.duration / sc.dt));
    RunResult result;
    result.end_time = sc.duration;
    result.log.records.reserve(n_steps + 1);

    for (std::size_t step = 0; step <= n_steps; ++step) {
        const double t = static_cast<double>(step) * sc.dt;
        const ReferenceSample ref = sample(sc.trajectory, t);

        ControlOutput ctrl;
        if (sc.controller == ControllerKind::Proposed) {
            ctrl = control_step(ref, state, sc.set, sc.gains, sc.vehicle, planner, t);
        } else {
            ctrl = baseline_step(ref, state, sc.gains, sc.vehicle);
        }

        const AllocationDemand demand = allocate(ctrl.u1, ctrl.u2, layout);
        const RotorCommand cmd =
            saturate_rotors(demand.w_squared, layout, sc.rotor_limits);

        BodyForce plant_u1 = ctrl.u1;
        Vec3 plant_u2 = ctrl.u2;
        if (sc.actuation == ActuationMode::Realized) {
            std::tie(plant_u1, plant_u2) = realize_wrench(cmd, layout);
        }

        TelemetryRecord rec;
        rec.t = t;
        rec.p = state.position;
        rec.v = state.velocity;
        rec.p_r = ref.position;
        rec.rpy_deg = euler_zyx_deg(state.attitude);
        rec.rpy_r_deg = euler_zyx_deg(ref.attitude);
        rec.rpy_d_deg = euler_zyx_deg(ctrl.desired.attitude);
        rec.u1 = ctrl.u1;
        rec.u2 = ctrl.u2;
        rec.w = cmd.w;
        rec.ep_norm = ctrl.diag.e_p.norm();
        rec.dist_R_Rd = rotation_distance(state.attitude, ctrl.desired.attitude);
        rec.dist_Rd_Rr = rotation_distance(ctrl.desired.attitude, ref.attitude);
        rec.lateral_saturated = ctrl.diag.lateral_saturated;
        rec.u3_clamped = ctrl.diag.u3_clamped;
        rec.rotor_saturated = cmd.any_saturated || demand.any_negative;
        rec.feasible_ref = ctrl.diag.feasible_ref;
        result.log.records.push_back(rec);

        if (rec.ep_norm > 2.0) {
            result.status = RunStatus::Diverged;
            result.end_time = t;
            break;
        }
        if (step < n_steps) {
            state = integrate_step(state, plant_u1, plant_u2, sc.vehicle, sc.dt);
        }
    }

    result.metrics = metrics(result.log, sc, result.status, result.end_time);
    return result;
}

// ---------------------------------------------------------------------------
// Metrics

ExpFit fit_exponential_decay(const std::vector<double>& t, const std::vector<double>& y) {
    ExpFit out;
    if (t.size() != y.size() || t.size() < 8) return out;

    const auto peak_it = std::max_element(y.begin(), y.end());
    const std::size_t peak = static_cast<std::size_t>(peak_it - y.begin());
    const double y_peak = *peak_it;
    if (!(y_peak > 0.0)) return out;

    // descent window: peak down to 1e-8 of the peak (or the end of the data)
    std::size_t last = y.size() - 1;
    for (std::size_t i = peak; i < y.size(); ++i) {
        if (y[i] <= 1e-8 * y_peak) {
            last = i;
            break;
        }
    }
    if (last <= peak + 4) return out;

    // prefer the envelope (local maxima) when the descent oscillates
    std::vector<std::size_t> idx;
    for (std::size_t i = peak + 1; i + 1 <= last - 1; ++i) {
        if (y[i] >= y[i - 1] && y[i] > y[i + 1]) idx.push_back(i);
    }
    if (idx.size() < 6) {
        idx.clear();
        for (std::size_t i = peak; i <= last; ++i) idx.push_back(i);
    } else {
        idx.insert(idx.begin(), peak);
        idx.push_back(last);
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    double n = 0;
    for (const std::size_t i : idx) {
        if (!(y[i] > 0.0)) continue;
        const double ly = std::log(y[i]);
        sx += t[i];
        sy += ly;
        sxx += t[i] * t[i];
        sxy += t[i] * ly;
        syy += ly * ly;
        n += 1.0;
    }
    if (n < 4) return out;
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12) return out;
    const double slope = (n * sxy - sx * sy) / denom;
    const double ss_tot = syy - sy * sy / n;
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0.0;
    for (const std::size_t i : idx) {
        if (!(y[i] > 0.0)) continue;
        const double e = std::log(y[i]) - (slope * t[i] + intercept);
        ss_res += e * e;
    }
    out.valid = true;
    out.rate = -slope;
    out.r2 = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 0.0;
    return out;
}

namespace {

PhaseMetrics phase_metrics(const TelemetryLog& log, double t_start, double t_end) {
    PhaseMetrics m;
    m.t_start = t_start;
    m.t_end = t_end;
    const double settle = t_start + 2.0;
    for (const TelemetryRecord& r : log.records) {
        if (r.t < t_start || r.t > t_end) continue;
        const double pitch_err = std::abs(r.rpy_deg.y() - r.rpy_r_deg.y());
        const double pitch_dev = std::abs(r.rpy_d_deg.y() - r.rpy_r_deg.y());
        m.max_ep = std::max(m.max_ep, r.ep_norm);
        m.max_pitch_err_deg = std::max(m.max_pitch_err_deg, pitch_err);
        m.max_pitch_dev_deg = std::max(m.max_pitch_dev_deg, pitch_dev);
        if (r.t >= settle) {
            m.steady_pitch_err_deg = std::max(m.steady_pitch_err_deg, pitch_err);
        }
    }
    return m;
}

}  // namespace

MetricsSummary metrics(const TelemetryLog& log, const Scenario& sc, RunStatus status,
                       double end_time) {
    MetricsSummary m;
    m.scenario = sc.name;
    m.status = (status == RunStatus::Ok) ? "ok" : "diverged";
    m.end_time = end_time;
    m.dt = sc.dt;
    m.steps = log.records.size();
    if (log.records.empty()) return m;

    std::size_t lat_sat = 0, rot_sat = 0, clamp = 0;
    for (const TelemetryRecord& r : log.records) {
        m.max_ep = std::max(m.max_ep, r.ep_norm);
        const double pitch_err = std::abs(r.rpy_deg.y() - r.rpy_r_deg.y());
        const double pitch_dev = std::abs(r.rpy_d_deg.y() - r.rpy_r_deg.y());
        m.max_pitch_err_deg = std::max(m.max_pitch_err_deg, pitch_err);
        m.max_pitch_dev_deg = std::max(m.max_pitch_dev_deg, pitch_dev);
        lat_sat += r.lateral_saturated ? 1 : 0;
        rot_sat += r.rotor_saturated ? 1 : 0;
        clamp += r.u3_clamped ? 1 : 0;
        if (m.t_ep_exceeds_half_m < 0.0 && r.ep_norm > 0.5) m.t_ep_exceeds_half_m = r.t;
        if (r.dist_Rd_Rr > 1e-9) m.dist_rd_rr_settle_time = r.t;
    }
    const double n = static_cast<double>(log.records.size());
    m.final_ep = log.records.back().ep_norm;
    m.lateral_sat_fraction = static_cast<double>(lat_sat) / n;
    m.rotor_sat_fraction = static_cast<double>(rot_sat) / n;
    m.u3_clamp_fraction = static_cast<double>(clamp) / n;

    // Reference feasibility and phase boundaries (envelope-margin sign).
    const auto report = feasibility_report(sc.trajectory, sc.set, sc.vehicle, sc.dt);
    std::size_t infeasible = 0;
    double t1_end = -1.0, t2_end = -1.0;
    for (const FeasibilityRow& row : report) {
        if (!row.feasible) ++infeasible;
        if (row.envelope_margin < 0.0) {
            if (t1_end < 0.0) t1_end = row.t;
            t2_end = row.t;
        }
    }
    m.infeasible_ref_fraction = static_cast<double>(infeasible) /
                                static_cast<double>(report.size());
    m.has_phases = t1_end > 0.0 && t2_end < sc.duration;
    if (m.has_phases) {
        m.phases.push_back(phase_metrics(log, 0.0, t1_end));
        m.phases.push_back(phase_metrics(log, t1_end, t2_end));
        m.phases.push_back(phase_metrics(log, t2_end, end_time));
    } else {
        m.phases.push_back(phase_metrics(log, 0.0, end_time));
    }

    // exponential-fit decay rates of the tracking errors
    std::vector<double> ts, eps, datts;
    ts.reserve(log.records.size());
    eps.reserve(log.records.size());
    datts.reserve(log.records.size());
    for (const TelemetryRecord& r : log.records) {
        ts.push_back(r.t);
        eps.push_back(r.ep_norm);
        datts.push_back(std::max(r.dist_R_Rd, 0.0));
    }
    m.ep_fit = fit_exponential_decay(ts, eps);
    m.attitude_fit = fit_exponential_decay(ts, datts);
    return m;
}

// ---------------------------------------------------------------------------
// Writers

namespace {

void append(std::string& line, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), ",%.9g", v);
    line += buf;
}

}  // namespace

void write_csv(std::ostream& out, const TelemetryLog& log) {
    out << "t,px,py,pz,vx,vy,vz,prx,pry,prz,"
           "roll_deg,pitch_deg,yaw_deg,roll_r_deg,pitch_r_deg,yaw_r_deg,"
           "roll_d_deg,pitch_d_deg,yaw_d_deg,"
           "u1x,u1y,u1z,u2x,u2y,u2z,w1,w2,w3,w4,w5,w6,"
           "ep_norm,dist_R_Rd,dist_Rd_Rr,lateral_sat,u3_clamped,rotor_sat,feasible_ref\n";
    std::string line;
    for (const TelemetryRecord& r : log.records) {
        line.clear();
        char head[32];
        std::snprintf(head, sizeof(head), "%.9g", r.t);
        line += head;
        for (int i = 0; i < 3; ++i) append(line, r.p[i]);
        for (int i = 0; i < 3; ++i) append(line, r.v[i]);
        for (int i = 0; i < 3; ++i) append(line, r.p_r[i]);
        for (int i = 0; i < 3; ++i) append(line, r.rpy_deg[i]);
        for (int i = 0; i < 3; ++i) append(line, r.rpy_r_deg[i]);
        for (int i = 0; i < 3; ++i) append(line, r.rpy_d_deg[i]);
        for (int i = 0; i < 3; ++i) append(line, r.u1[i]);
        for (int i = 0; i < 3; ++i) append(line, r.u2[i]);
        for (int i = 0; i < 6; ++i) append(line, r.w[i]);
        append(line, r.ep_norm);
        append(line, r.dist_R_Rd);
        append(line, r.dist_Rd_Rr);
        line += r.lateral_saturated ? ",1" : ",0";
        line += r.u3_clamped ? ",1" : ",0";
        line += r.rotor_saturated ? ",1" : ",0";
        line += r.feasible_ref ? ",1" : ",0";
        line += '\n';
        out << line;
    }
}

void write_metrics(std::ostream& out, const MetricsSummary& m,
                   std::optional<unsigned> seed) {
    const auto emit = [&out](const std::string& key, double v) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.9g", v);
        out << key << " = " << buf << "\n";
    };
    out << "scenario = " << m.scenario << "\n";
    out << "csv_schema = " << kTelemetrySchemaVersion << "\n";
    if (seed) out << "seed = " << *seed << "\n";
    out << "status = " << m.status << "\n";
    emit("end_time", m.end_time);
    emit("dt", m.dt);
    emit("steps", static_cast<double>(m.steps));
    emit("max_ep", m.max_ep);
    emit("final_ep", m.final_ep);
    emit("max_pitch_err_deg", m.max_pitch_err_deg);
    emit("max_pitch_dev_deg", m.max_pitch_dev_deg);
    emit("lateral_sat_fraction", m.lateral_sat_fraction);
    emit("rotor_sat_fraction", m.rotor_sat_fraction);
    emit("u3_clamp_fraction", m.u3_clamp_fraction);
    emit("infeasible_ref_fraction", m.infeasible_ref_fraction);
    emit("t_ep_exceeds_half_m", m.t_ep_exceeds_half_m);
    emit("dist_rd_rr_settle_time", m.dist_rd_rr_settle_time);
    out << "has_phases = " << (m.has_phases ? "true" : "false") << "\n";
    for (std::size_t i = 0; i < m.phases.size(); ++i) {
        const PhaseMetrics& p = m.phases[i];
        const std::string tag = "phase" + std::to_string(i + 1);
        emit(tag + ".t_start", p.t_start);
        emit(tag + ".t_end", p.t_end);
        emit(tag + ".max_ep", p.max_ep);
        emit(tag + ".max_pitch_err_deg", p.max_pitch_err_deg);
        emit(tag + ".max_pitch_dev_deg", p.max_pitch_dev_deg);
        emit(tag + ".steady_pitch_err_deg", p.steady_pitch_err_deg);
    }
    out << "ep_fit.valid = " << (m.ep_fit.valid ? "true" : "false") << "\n";
    emit("ep_fit.rate", m.ep_fit.rate);
    emit("ep_fit.r2", m.ep_fit.r2);
    out << "attitude_fit.valid = " << (m.attitude_fit.valid ? "true" : "false") << "\n";
    emit("attitude_fit.rate", m.attitude_fit.rate);
    emit("attitude_fit.r2", m.attitude_fit.r2);
}

void write_feasibility(std::ostream& out, const std::vector<FeasibilityRow>& rows) {
    out << "t,feasible,margin,envelope_margin\n";
    std::string line;
    for (const FeasibilityRow& r : rows) {
        line.clear();
        char head[32];
        std::snprintf(head, sizeof(head), "%.9g", r.t);
        line += head;
        line += r.feasible ? ",1" : ",0";
        append(line, r.margin);
        append(line, r.envelope_margin);
        line += '\n';
        out << line;
    }
}

}  // namespace lbf

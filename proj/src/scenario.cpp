#include "lbf/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "lbf/errors.hpp"

namespace lbf {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Typed access to a ConfigMap that tracks consumed keys so that unknown
/// (misspelled) keys can be rejected after the scenario is built.
class ConfigReader {
public:
    explicit ConfigReader(const ConfigMap& config) : config_(config) {}

    bool has(const std::string& key) {
        return config_.find(key) != config_.end();
    }

    std::string get_string(const std::string& key, const std::string& fallback) {
        auto it = config_.find(key);
        if (it == config_.end()) return fallback;
        consumed_.insert(key);
        return it->second;
    }

    double get_double(const std::string& key, double fallback) {
        auto it = config_.find(key);
        if (it == config_.end()) return fallback;
        consumed_.insert(key);
        return parse_double(key, it->second);
    }

    int get_int(const std::string& key, int fallback) {
        return static_cast<int>(get_double(key, fallback));
    }

    bool get_bool(const std::string& key, bool fallback) {
        auto it = config_.find(key);
        if (it == config_.end()) return fallback;
        consumed_.insert(key);
        if (it->second == "true") return true;
        if (it->second == "false") return false;
        throw ConfigError("key '" + key + "': expected true or false");
    }

    Vec3 get_vec3(const std::string& key, const Vec3& fallback) {
        auto it = config_.find(key);
        if (it == config_.end()) return fallback;
        consumed_.insert(key);
        std::istringstream in(it->second);
        Vec3 v;
        if (!(in >> v.x() >> v.y() >> v.z())) {
            throw ConfigError("key '" + key + "': expected three numbers");
        }
        return v;
    }

    /// "t0:r0 t1:r1 ..." pairs for the radius schedule.
    std::vector<std::pair<double, double>> get_schedule(const std::string& key) {
        auto it = config_.find(key);
        if (it == config_.end()) return {};
        consumed_.insert(key);
        std::vector<std::pair<double, double>> out;
        std::istringstream in(it->second);
        std::string tok;
        while (in >> tok) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos) {
                throw ConfigError("key '" + key + "': expected time:radius pairs");
            }
            out.emplace_back(parse_double(key, tok.substr(0, colon)),
                             parse_double(key, tok.substr(colon + 1)));
        }
        return out;
    }

    void reject_unknown() const {
        for (const auto& [key, value] : config_) {
            if (consumed_.find(key) == consumed_.end()) {
                throw ConfigError("unknown configuration key '" + key + "'");
            }
        }
    }

private:
    static double parse_double(const std::string& key, const std::string& text) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(text, &pos);
            if (pos != text.size()) throw std::invalid_argument(text);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': cannot parse number '" + text + "'");
        }
    }

    const ConfigMap& config_;
    std::set<std::string> consumed_;
};

constexpr double kDegToRad = M_PI / 180.0;

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        }
        if (!out.emplace(key, value).second) {
            throw ConfigError("duplicate key '" + key + "'");
        }
    }
    return out;
}

std::string serialize_config(const ConfigMap& config) {
    std::ostringstream out;
    for (const auto& [key, value] : config) {
        out << key << " = " << value << "\n";
    }
    return out.str();
}

std::vector<std::string> builtin_names() {
    return {"exp11", "exp12", "exp13", "exp2", "exp3", "hover"};
}

bool is_builtin(const std::string& name) {
    const auto names = builtin_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

ConfigMap builtin_scenario(const std::string& name) {
    // Common Tilt-Hex platform block.
    ConfigMap base = {
        {"dt", "0.002"},
        {"controller", "proposed"},
        {"actuation", "realized"},
        {"vehicle.mass", "1.8"},
        {"vehicle.inertia_diag", "0.04 0.04 0.07"},
        {"vehicle.gravity", "9.81"},
        {"gains.kp", "20"},
        {"gains.kv", "8"},
        {"gains.kr", "4"},
        {"gains.komega", "0.8"},
        {"initial.position", "0 0 1"},
    };
    const auto chirp = [&base]() {
        base.insert({{"duration", "95"},
                     {"trajectory.kind", "chirp"},
                     {"trajectory.amplitude", "1.2"},
                     {"trajectory.accel_max", "5.9"},
                     {"trajectory.axis", "1 0 0"},
                     {"trajectory.base", "0 0 1"},
                     {"trajectory.blend", "3"}});
    };

    if (name == "exp11") {
        chirp();
        base["name"] = "exp11";
        base["set.kind"] = "cylindric";
        base["set.r_xy"] = "3";
    } else if (name == "exp12") {
        chirp();
        base["name"] = "exp12";
        base["set.kind"] = "cylindric";
        base["set.r_xy"] = "0";
    } else if (name == "exp13") {
        chirp();
        base["name"] = "exp13";
        base["set.kind"] = "cylindric";
        base["set.r_xy"] = "3";
        base["controller"] = "baseline";
        base["rotors.limits"] = "true";
        base["expect_divergence"] = "true";
    } else if (name == "exp2") {
        chirp();
        base["name"] = "exp2";
        base["set.kind"] = "cylindric";
        base["set.r_xy"] = "3";
        base["orientation.kind"] = "axis_sine";
        base["orientation.axis"] = "0 1 0";
        base["orientation.amplitude_deg"] = "10";
        base["orientation.lock_phase"] = "true";
        // tilt outward at the trajectory ends, opposing the underactuated need
        base["orientation.phase_sign"] = "1";
    } else if (name == "exp3") {
        base["name"] = "exp3";
        base["duration"] = "56";
        base["trajectory.kind"] = "multisine_connected";
        base["trajectory.amp_x"] = "1.3";
        base["trajectory.freq_x"] = "0.25";
        base["trajectory.amp_y"] = "0.5";
        base["trajectory.freq_y"] = "0.5";
        base["trajectory.base"] = "0 0 1";
        base["trajectory.connect_duration"] = "4";
        base["set.kind"] = "cylindric";
        base["set.schedule"] = "18:0 38:10";
        base["initial.position"] = "0.3 -0.2 1";
    } else if (name == "hover") {
        base["name"] = "hover";
        base["duration"] = "10";
        base["trajectory.kind"] = "hover";
        base["trajectory.base"] = "0 0 1";
        base["set.kind"] = "cylindric";
        base["set.r_xy"] = "3";
    } else {
        throw ConfigError("unknown built-in scenario '" + name + "'");
    }
    return base;
}

ConfigMap load_scenario_source(const std::string& name_or_path) {
    if (is_builtin(name_or_path)) {
        return builtin_scenario(name_or_path);
    }
    std::ifstream in(name_or_path);
    if (!in) {
        throw ConfigError("scenario '" + name_or_path +
                          "' is neither a built-in name nor a readable file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

Scenario make_scenario(const ConfigMap& config) {
    ConfigReader r(config);
    Scenario sc;

    sc.name = r.get_string("name", "custom");
    sc.duration = r.get_double("duration", 10.0);
    sc.dt = r.get_double("dt", 0.002);
    if (sc.duration <= 0.0 || sc.dt <= 0.0 || sc.dt > 0.01) {
        throw ConfigError("need duration > 0 and dt in (0, 0.01]");
    }
    const double steps = sc.duration / sc.dt;
    if (std::abs(steps - std::round(steps)) > 1e-6) {
        throw ConfigError("dt must divide duration");
    }

    const std::string controller = r.get_string("controller", "proposed");
    if (controller == "proposed") {
        sc.controller = ControllerKind::Proposed;
    } else if (controller == "baseline") {
        sc.controller = ControllerKind::Baseline;
    } else {
        throw ConfigError("controller must be proposed or baseline");
    }

    const std::string actuation = r.get_string("actuation", "realized");
    if (actuation == "realized") {
        sc.actuation = ActuationMode::Realized;
    } else if (actuation == "idealized") {
        sc.actuation = ActuationMode::Idealized;
    } else {
        throw ConfigError("actuation must be realized or idealized");
    }
    sc.expect_divergence = r.get_bool("expect_divergence", false);

    // vehicle
    {
        const Vec3 j_diag = r.get_vec3("vehicle.inertia_diag", Vec3(0.04, 0.04, 0.07));
        sc.vehicle = VehicleParams(r.get_double("vehicle.mass", 1.8),
                                   Mat3(j_diag.asDiagonal()),
                                   r.get_double("vehicle.gravity", 9.81));
    }

    // gains
    sc.gains = Gains(r.get_double("gains.kp", 20.0), r.get_double("gains.kv", 8.0),
                     r.get_double("gains.kr", 4.0), r.get_double("gains.komega", 0.8));

    // initial state
    sc.initial.position = r.get_vec3("initial.position", Vec3(0, 0, 1));
    sc.initial.velocity = r.get_vec3("initial.velocity", Vec3::Zero());
    sc.initial.angular_velocity = r.get_vec3("initial.angular_velocity", Vec3::Zero());
    {
        const Vec3 axis = r.get_vec3("initial.attitude_axis", Vec3::UnitY());
        const double angle = r.get_double("initial.attitude_angle_deg", 0.0) * kDegToRad;
        sc.initial.attitude =
            (angle != 0.0) ? exp_map(axis.normalized() * angle) : Mat3::Identity();
    }

    // bound set
    {
        const std::string kind = r.get_string("set.kind", "cylindric");
        if (kind == "underactuated") {
            sc.set = LateralBoundSet::underactuated();
        } else if (kind == "conic") {
            sc.set = LateralBoundSet::conic(r.get_double("set.alpha_deg", 35.0) * kDegToRad);
        } else if (kind == "cylindric") {
            auto schedule = r.get_schedule("set.schedule");
            sc.set = schedule.empty()
                         ? LateralBoundSet::cylindric(r.get_double("set.r_xy", 3.0))
                         : LateralBoundSet::cylindric(std::move(schedule));
        } else {
            throw ConfigError("set.kind must be underactuated, conic or cylindric");
        }
    }

    // trajectory
    {
        const std::string kind = r.get_string("trajectory.kind", "hover");
        const Vec3 base = r.get_vec3("trajectory.base", Vec3(0, 0, 1));
        if (kind == "hover") {
            sc.trajectory.position = std::make_shared<HoverProgram>(base, sc.duration);
        } else if (kind == "chirp") {
            sc.trajectory.position = std::make_shared<ChirpProgram>(
                r.get_double("trajectory.amplitude", 1.2),
                r.get_double("trajectory.accel_max", 5.9), sc.duration,
                r.get_vec3("trajectory.axis", Vec3::UnitX()), base,
                r.get_double("trajectory.blend", 3.0));
        } else if (kind == "multisine_connected") {
            MultiSineProgram::Axis x{r.get_double("trajectory.amp_x", 1.3),
                                     r.get_double("trajectory.freq_x", 0.25), 0.0};
            MultiSineProgram::Axis y{r.get_double("trajectory.amp_y", 0.5),
                                     r.get_double("trajectory.freq_y", 0.5), 0.0};
            const double t_c = r.get_double("trajectory.connect_duration", 4.0);
            if (t_c <= 0.0 || t_c >= sc.duration) {
                throw ConfigError("trajectory.connect_duration must lie inside the run");
            }
            // phase the sines as if running since t = 0
            x.phase = 2.0 * M_PI * x.frequency * t_c;
            y.phase = 2.0 * M_PI * y.frequency * t_c;
            auto sines = std::make_shared<MultiSineProgram>(x, y, sc.duration - t_c, base);
            PosSample from;
            from.p = sc.initial.position;
            auto connector =
                std::make_shared<PolynomialConnector>(from, sines->at(0.0), t_c);
            sc.trajectory.position = std::make_shared<CompositeProgram>(
                std::vector<std::shared_ptr<const PositionProgram>>{connector, sines});
        } else {
            throw ConfigError("trajectory.kind must be hover, chirp or multisine_connected");
        }

        const std::string okind = r.get_string("orientation.kind", "constant");
        if (okind == "constant") {
            sc.trajectory.orientation.kind = OrientationProgram::Kind::Constant;
        } else if (okind == "axis_sine") {
            OrientationProgram o;
            o.kind = OrientationProgram::Kind::AxisSine;
            o.axis = r.get_vec3("orientation.axis", Vec3::UnitY()).normalized();
            o.amplitude = r.get_double("orientation.amplitude_deg", 10.0) * kDegToRad;
            o.frequency = r.get_double("orientation.frequency", 0.25);
            o.lock_to_position_phase = r.get_bool("orientation.lock_phase", false);
            o.phase_sign = r.get_double("orientation.phase_sign", 1.0);
            sc.trajectory.orientation = o;
        } else {
            throw ConfigError("orientation.kind must be constant or axis_sine");
        }
    }

    // rotors
    sc.rotor_config.arm_length = r.get_double("rotors.arm_length", 0.4);
    sc.rotor_config.alpha = r.get_double("rotors.alpha_deg", 35.0) * kDegToRad;
    sc.rotor_config.beta = r.get_double("rotors.beta_deg", 25.0) * kDegToRad;
    sc.rotor_config.thrust_coeff = r.get_double("rotors.thrust_coeff", 12.0 / (83.0 * 83.0));
    sc.rotor_config.drag_ratio = r.get_double("rotors.drag_ratio", 0.017);
    sc.rotor_config.w_min = r.get_double("rotors.w_min", 43.0);
    sc.rotor_config.w_max = r.get_double("rotors.w_max", 83.0);
    sc.rotor_limits = r.get_bool("rotors.limits", false);

    sc.planner_iterations = r.get_int("planner.iterations", 40);
    sc.planner_filter_tau = r.get_double("planner.filter_tau", 0.02);
    if (sc.planner_iterations < 1 || sc.planner_filter_tau < 0.0) {
        throw ConfigError("planner.iterations must be >= 1 and planner.filter_tau >= 0");
    }

    r.reject_unknown();
    return sc;
}

}  // namespace lbf

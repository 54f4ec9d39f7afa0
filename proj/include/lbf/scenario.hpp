#pragma once

#include <map>
#include <string>
#include <vector>

#include "lbf/allocation.hpp"
#include "lbf/controller.hpp"
#include "lbf/trajectories.hpp"

namespace lbf {

/// Flat key = value configuration with dotted paths for nesting. Parsed from
/// text (one key per line, '#' comments) or produced by the built-in catalog.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text);
std::string serialize_config(const ConfigMap& config);

/// Built-in scenario catalog: exp11, exp12, exp13, exp2, exp3, hover.
std::vector<std::string> builtin_names();
bool is_builtin(const std::string& name);
ConfigMap builtin_scenario(const std::string& name);

/// Resolves a CLI scenario argument: a built-in name or a path to a file.
ConfigMap load_scenario_source(const std::string& name_or_path);

enum class ControllerKind { Proposed, Baseline };
enum class ActuationMode { Realized, Idealized };

/// Everything needed to run one closed-loop simulation.
struct Scenario {
    std::string name = "custom";
    double duration = 10.0;
    double dt = 0.002;
    ControllerKind controller = ControllerKind::Proposed;
    ActuationMode actuation = ActuationMode::Realized;
    bool expect_divergence = false;

    TrajectorySpec trajectory;
    LateralBoundSet set = LateralBoundSet::cylindric(3.0);
    VehicleParams vehicle = VehicleParams::tilt_hex();
    Gains gains;
    RotorLayout::Config rotor_config;
    bool rotor_limits = false;
    int planner_iterations = 40;
    double planner_filter_tau = 0.02;
    RigidBodyState initial;
};

/// Builds and validates a scenario; throws ConfigError on bad or unknown keys.
Scenario make_scenario(const ConfigMap& config);

}  // namespace lbf

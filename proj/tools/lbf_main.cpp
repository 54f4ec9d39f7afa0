// lbf-sim: closed-loop flight simulation of the laterally-bounded-force
// geometric controller. Subcommands: list, run, analyze, sweep.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "lbf/errors.hpp"
#include "lbf/simulation.hpp"

namespace {

namespace fs = std::filesystem;

fs::path output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("LBF_OUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return ".";
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw lbf::ConfigError("cannot write " + path.string());
    return out;
}

int cmd_run(const std::string& source, const std::string& out_flag,
            std::optional<unsigned> seed) {
    const lbf::ConfigMap config = lbf::load_scenario_source(source);
    const lbf::Scenario scenario = lbf::make_scenario(config);
    const lbf::RunResult result = lbf::run_scenario(scenario);

    const fs::path dir = output_dir(out_flag);
    fs::create_directories(dir);
    {
        auto csv = open_out(dir / (scenario.name + ".csv"));
        lbf::write_csv(csv, result.log);
    }
    {
        auto metrics = open_out(dir / (scenario.name + ".metrics"));
        lbf::write_metrics(metrics, result.metrics, seed);
    }

    const bool diverged = result.status == lbf::RunStatus::Diverged;
    std::cout << "scenario " << scenario.name << ": "
              << (diverged ? "diverged at t = " + std::to_string(result.end_time) + " s"
                           : "completed " + std::to_string(scenario.duration) + " s")
              << ", max |e_p| = " << result.metrics.max_ep << " m\n";
    if (diverged && !scenario.expect_divergence) {
        std::cerr << "unexpected divergence\n";
        return 2;
    }
    return 0;
}

int cmd_analyze(const std::string& source, const std::string& out_flag) {
    const lbf::ConfigMap config = lbf::load_scenario_source(source);
    const lbf::Scenario scenario = lbf::make_scenario(config);
    const auto report =
        lbf::feasibility_report(scenario.trajectory, scenario.set, scenario.vehicle,
                                scenario.dt);

    const fs::path dir = output_dir(out_flag);
    fs::create_directories(dir);
    auto out = open_out(dir / (scenario.name + ".feasibility"));
    lbf::write_feasibility(out, report);

    std::size_t infeasible = 0;
    double min_margin = report.empty() ? 0.0 : report.front().margin;
    for (const auto& row : report) {
        if (!row.feasible) ++infeasible;
        min_margin = std::min(min_margin, row.margin);
    }
    std::cout << "scenario " << scenario.name << ": samples = " << report.size()
              << ", infeasible_fraction = "
              << static_cast<double>(infeasible) / static_cast<double>(report.size())
              << ", min_margin = " << min_margin << " N\n";
    return 0;
}

int cmd_sweep(const std::string& source, const std::string& param,
              const std::string& range, const std::string& out_flag) {
    const lbf::ConfigMap base = lbf::load_scenario_source(source);

    double lo = 0.0, hi = 0.0;
    int count = 0;
    {
        const auto c1 = range.find(':');
        const auto c2 = range.rfind(':');
        if (c1 == std::string::npos || c2 == c1) {
            throw lbf::ConfigError("--range expects a:b:n");
        }
        try {
            lo = std::stod(range.substr(0, c1));
            hi = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
            count = std::stoi(range.substr(c2 + 1));
        } catch (const std::exception&) {
            throw lbf::ConfigError("--range expects a:b:n");
        }
        if (count < 1) throw lbf::ConfigError("--range needs n >= 1");
    }

    const fs::path dir = output_dir(out_flag);
    fs::create_directories(dir);
    const std::string base_name =
        base.count("name") ? base.at("name") : std::string("sweep");
    auto out = open_out(dir / (base_name + ".sweep"));
    out << "param,value,status,max_ep,max_pitch_dev_deg,lateral_sat_fraction\n";

    for (int i = 0; i < count; ++i) {
        const double value =
            (count == 1) ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
        lbf::ConfigMap config = base;
        config[param] = std::to_string(value);
        config["name"] = base_name + "_" + std::to_string(i);
        const lbf::Scenario scenario = lbf::make_scenario(config);
        const lbf::RunResult result = lbf::run_scenario(scenario);
        out << param << ',' << value << ','
            << (result.status == lbf::RunStatus::Ok ? "ok" : "diverged") << ','
            << result.metrics.max_ep << ',' << result.metrics.max_pitch_dev_deg << ','
            << result.metrics.lateral_sat_fraction << '\n';
        std::cout << param << " = " << value << " -> "
                  << (result.status == lbf::RunStatus::Ok ? "ok" : "diverged")
                  << ", max |e_p| = " << result.metrics.max_ep << " m\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laterally-bounded-force multirotor flight simulator"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List built-in scenarios");

    std::string run_source, run_out;
    std::optional<unsigned> run_seed;
    auto* run = app.add_subcommand("run", "Run a scenario and write telemetry");
    run->add_option("scenario", run_source, "Built-in name or scenario file")->required();
    run->add_option("--out", run_out, "Output directory (default: $LBF_OUT_DIR or .)");
    run->add_option("--seed", run_seed, "Seed recorded in the metrics file");

    std::string an_source, an_out;
    auto* analyze = app.add_subcommand("analyze", "Feasibility report only");
    analyze->add_option("scenario", an_source, "Built-in name or scenario file")->required();
    analyze->add_option("--out", an_out, "Output directory");

    std::string sw_source, sw_out, sw_param, sw_range;
    auto* sweep = app.add_subcommand("sweep", "Run a scenario over a parameter range");
    sweep->add_option("scenario", sw_source, "Built-in name or scenario file")->required();
    sweep->add_option("--param", sw_param, "Configuration key to vary")->required();
    sweep->add_option("--range", sw_range, "a:b:n linear range")->required();
    sweep->add_option("--out", sw_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& name : lbf::builtin_names()) std::cout << name << "\n";
            return 0;
        }
        if (run->parsed()) return cmd_run(run_source, run_out, run_seed);
        if (analyze->parsed()) return cmd_analyze(an_source, an_out);
        if (sweep->parsed()) return cmd_sweep(sw_source, sw_param, sw_range, sw_out);
    } catch (const lbf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

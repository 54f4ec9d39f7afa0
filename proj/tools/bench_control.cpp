// Wall-time benchmark of one control iteration (reference force, attitude
// planning, force and moment commands) plus the rotor allocation path.

#include <chrono>
#include <cstdio>

#include "lbf/baseline.hpp"
#include "lbf/simulation.hpp"

int main() {
    using clock = std::chrono::steady_clock;

    const lbf::Scenario sc = lbf::make_scenario(lbf::builtin_scenario("exp11"));
    const lbf::RotorLayout layout(sc.rotor_config);
    lbf::PlannerState planner;

    // mid-chirp state with an infeasible reference so the bisection runs
    lbf::RigidBodyState state;
    state.position = lbf::Vec3(0.1, 0.02, 1.0);
    state.velocity = lbf::Vec3(0.5, 0.0, 0.0);
    state.attitude = lbf::exp_map(lbf::Vec3(0.0, 0.3, 0.0));
    state.angular_velocity = lbf::Vec3(0.05, 0.2, 0.0);

    const int n = 200000;
    double checksum = 0.0;
    const auto start = clock::now();
    for (int i = 0; i < n; ++i) {
        const double t = 40.0 + 0.002 * (i % 1000);
        const lbf::ReferenceSample ref = lbf::sample(sc.trajectory, t);
        const lbf::ControlOutput ctrl =
            lbf::control_step(ref, state, sc.set, sc.gains, sc.vehicle, planner, t);
        const lbf::AllocationDemand demand = lbf::allocate(ctrl.u1, ctrl.u2, layout);
        checksum += ctrl.u2.sum() + demand.w_squared.sum();
    }
    const auto stop = clock::now();
    const double total_us =
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count() / 1e3;

    std::printf("control_step + plan + allocate: %.3f us mean over %d iterations\n",
                total_us / n, n);
    std::printf("(checksum %.6g)\n", checksum);
    return 0;
}

#pragma once

#include "lbf/controller.hpp"

namespace lbf {

/// Comparison controller: full-wrench inverse dynamics with no input
/// constraint handling. The body force is the unsaturated projection of f_r
/// and the attitude loop tracks R_r directly (R_d = R_r, w_d = w_r). Input
/// limits only act downstream, at the rotor clamps.
ControlOutput baseline_step(const ReferenceSample& sample, const RigidBodyState& state,
                            const Gains& gains, const VehicleParams& params);

}  // namespace lbf

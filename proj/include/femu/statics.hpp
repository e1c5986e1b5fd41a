#pragma once

#include "femu/assemble.hpp"
#include "femu/model.hpp"
#include "femu/types.hpp"

namespace femu {

struct TipDeflectionResult {
  double deflection = 0.0;       // m, along the load direction
  double suspended_length = 0.0; // m, tip to the outermost clamped node
  double equivalent_ei = 0.0;    // N m^2, P L^3 / (3 delta)
  int tip_node = -1;
};

/// Applies `load` [N] along `direction` at the free-end node of maximum span
/// coordinate and solves the reduced static problem K u = f. Also reports the
/// equivalent uniform-cantilever bending stiffness.
TipDeflectionResult static_tip_deflection(const BeamModel& model, double load,
                                          const Vec3& direction = Vec3(0, 1, 0));

}  // namespace femu

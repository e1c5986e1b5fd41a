#pragma once

#include <string>
#include <vector>

#include "femu/assemble.hpp"
#include "femu/modal.hpp"
#include "femu/types.hpp"

namespace femu {

/// One accelerometer position; `dof` is the local DOF index it measures
/// (1 = vertical translation, the ground-vibration-test default).
struct Sensor {
  std::string id;
  Vec3 position = Vec3::Zero();
  int dof = 1;
};

/// Samples mode shapes at sensor locations: for each sensor the requested DOF
/// of the nearest node (slave nodes recovered through the rigid-link
/// transform). Columns are normalized to unit maximum absolute value.
/// Throws ConfigError when a sensor lies outside the model bounding box by
/// more than one element length.
Matrix sample_mode_at_sensors(const ModalSolution& solution, const AssembledSystem& system,
                              const std::vector<Sensor>& sensors);

}  // namespace femu

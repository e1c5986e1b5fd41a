#include "femu/sensors.hpp"

#include <cmath>
#include <limits>

namespace femu {

Matrix sample_mode_at_sensors(const ModalSolution& solution, const AssembledSystem& system,
                              const std::vector<Sensor>& sensors) {
  if (sensors.empty()) throw ConfigError("no sensors given");
  if (solution.mode_count() == 0) throw ConfigError("no modes to sample");

  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
  Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::max());
  for (const Node& n : system.nodes) {
    lo = lo.cwiseMin(n.position);
    hi = hi.cwiseMax(n.position);
  }

  const int n_modes = solution.mode_count();
  Matrix sampled(sensors.size(), n_modes);

  std::vector<Vector> full_shapes;
  full_shapes.reserve(n_modes);
  for (int j = 0; j < n_modes; ++j) full_shapes.push_back(system.expand(solution.shapes.col(j)));

  for (int si = 0; si < static_cast<int>(sensors.size()); ++si) {
    const Sensor& s = sensors[si];
    if (s.dof < 0 || s.dof > 5) throw ConfigError("sensor dof out of range");

    const Vec3 outside = (s.position - hi).cwiseMax(lo - s.position).cwiseMax(0.0);
    if (outside.norm() > system.max_element_length)
      throw ConfigError("sensor " + s.id + " lies outside the model by more than one element length");

    int best = -1;
    double best_d = std::numeric_limits<double>::max();
    for (const Node& n : system.nodes) {
      const double d = (n.position - s.position).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = n.id;
      }
    }
    const int g = AssembledSystem::dof_index(best, s.dof);
    for (int j = 0; j < n_modes; ++j) sampled(si, j) = full_shapes[j][g];
  }

  for (int j = 0; j < n_modes; ++j) {
    const double peak = sampled.col(j).cwiseAbs().maxCoeff();
    if (peak > 0.0) sampled.col(j) /= peak;
  }
  return sampled;
}

}  // namespace femu

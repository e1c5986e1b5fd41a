#include "femu/statics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace femu {

TipDeflectionResult static_tip_deflection(const BeamModel& model, double load,
                                          const Vec3& direction) {
  if (model.clamped_nodes.empty()) throw ConfigError("static analysis needs a clamped model");
  const double dir_norm = direction.norm();
  if (!(dir_norm > 0.0)) throw ConfigError("load direction must be nonzero");
  const Vec3 dir = direction / dir_norm;

  const AssembledSystem sys = assemble_system(model);

  // Tip = non-slave node of maximum span coordinate; ties resolved toward the
  // beam axis so offset mass nodes never win.
  int tip = -1;
  double best_x = -std::numeric_limits<double>::max();
  double best_off = std::numeric_limits<double>::max();
  for (const Node& n : sys.nodes) {
    if (sys.slave_node[n.id]) continue;
    const double off = std::hypot(n.position.y(), n.position.z());
    if (n.position.x() > best_x + 1e-12 ||
        (std::abs(n.position.x() - best_x) <= 1e-12 && off < best_off)) {
      best_x = n.position.x();
      best_off = off;
      tip = n.id;
    }
  }
  if (tip < 0) throw ConfigError("no tip node found");

  Vector f_full = Vector::Zero(sys.full_dof_count());
  for (int c = 0; c < 3; ++c) f_full[AssembledSystem::dof_index(tip, c)] = load * dir[c];
  const Vector f_red = sys.transform.transpose() * f_full;

  Eigen::LLT<Matrix> chol(sys.reduced_stiffness);
  if (chol.info() != Eigen::Success)
    throw NumericalError("singular stiffness matrix: model is not fully constrained");
  const Vector u_red = chol.solve(f_red);
  const Vector u_full = sys.expand(u_red);

  Vec3 tip_disp;
  for (int c = 0; c < 3; ++c) tip_disp[c] = u_full[AssembledSystem::dof_index(tip, c)];

  TipDeflectionResult out;
  out.tip_node = tip;
  out.deflection = tip_disp.dot(dir);

  double clamp_x = -std::numeric_limits<double>::max();
  for (int c : model.clamped_nodes) clamp_x = std::max(clamp_x, model.nodes[c].position.x());
  out.suspended_length = best_x - clamp_x;

  if (std::abs(out.deflection) > 0.0 && load != 0.0) {
    const double l3 = std::pow(out.suspended_length, 3);
    out.equivalent_ei = std::abs(load) * l3 / (3.0 * std::abs(out.deflection));
  }
  return out;
}

}  // namespace femu

#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "femu/model.hpp"
#include "femu/types.hpp"

namespace femu {

/// Assembled global system. Six DOFs per node ordered
/// (ux, uy, uz, rx, ry, rz); global index = 6 * node + local.
/// `transform` maps reduced coordinates to full coordinates
/// (u_full = T * u_red) and eliminates rigid-link slaves and clamps.
struct AssembledSystem {
  Matrix mass;       // full, n x n
  Matrix stiffness;  // full, n x n
  Eigen::SparseMatrix<double> transform;  // n x m
  Matrix reduced_mass;
  Matrix reduced_stiffness;
  std::vector<int> reduced_to_full;  // m entries: global DOF of each reduced coordinate
  std::vector<Node> nodes;           // copy, for sampling and classification
  std::vector<char> slave_node;      // per node
  double max_element_length = 0.0;

  int full_dof_count() const { return static_cast<int>(mass.rows()); }
  int reduced_dof_count() const { return static_cast<int>(reduced_mass.rows()); }
  static int dof_index(int node, int local) { return 6 * node + local; }

  /// Expands a reduced-coordinate vector to all DOFs (clamped rows are zero,
  /// slave rows recovered through the rigid-link kinematics).
  Vector expand(const Vector& reduced) const;
};

/// Resolved per-element inputs for the matrix builders.
struct ElementProperties {
  double youngs_modulus = 0.0;
  double shear_modulus = 0.0;
  double density = 0.0;
  double area = 0.0;
  double i_xx = 0.0;  // bending inertia, deflection along local z
  double i_yy = 0.0;  // bending inertia, deflection along local y
  double torsion_j = 0.0;
  double shear_correction = 5.0 / 6.0;
};

/// Rotation whose rows are the element's local axes in global coordinates.
Eigen::Matrix3d element_triad(const Vec3& xa, const Vec3& xb, const Vec3& orientation);

/// 12x12 Timoshenko beam stiffness/consistent-mass in local coordinates.
/// DOF order (uxa, uya, uza, rxa, rya, rza, uxb, ...).
Matrix beam_stiffness_local(const ElementProperties& p, double length);
Matrix beam_mass_local(const ElementProperties& p, double length);

/// Same matrices rotated to global coordinates.
Matrix beam_stiffness_global(const ElementProperties& p, const Vec3& xa, const Vec3& xb,
                             const Vec3& orientation);
Matrix beam_mass_global(const ElementProperties& p, const Vec3& xa, const Vec3& xb,
                        const Vec3& orientation);

ElementProperties resolve_element(const BeamModel& model, const BeamElement& e);

/// Builds global M and K, applies lumped masses, eliminates rigid links by
/// master-slave transformation and removes clamped DOFs.
AssembledSystem assemble_system(const BeamModel& model);

}  // namespace femu

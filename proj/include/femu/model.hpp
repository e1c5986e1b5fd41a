#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "femu/types.hpp"

namespace femu {

struct Material {
  std::string name;
  double youngs_modulus = 0.0;  // Pa
  double poisson_ratio = 0.0;
  double density = 0.0;  // kg/m^3

  double shear_modulus() const { return youngs_modulus / (2.0 * (1.0 + poisson_ratio)); }
};

/// Cross-section properties. Axis convention: `i_yy` is the second moment
/// governing bending deflection along the element's local y axis (the
/// orientation direction, vertical for the wing models); `i_xx` governs
/// deflection along the local z axis (in-plane / lagging).
/// `shear_correction` is the Timoshenko factor kappa in (0, 1]; an infinite
/// value disables shear flexibility (Euler-Bernoulli behaviour).
struct Section {
  std::string name;
  double area = 0.0;        // m^2
  double i_xx = 0.0;        // m^4
  double i_yy = 0.0;        // m^4
  double torsion_j = 0.0;   // m^4
  double shear_correction = 5.0 / 6.0;
};

struct Node {
  int id = -1;
  Vec3 position = Vec3::Zero();
  std::string group;
};

/// Two-node 3-D Timoshenko beam. Section properties are blended linearly
/// between `section_a` and `section_b` (`blend` = 0 -> a, 1 -> b), which is
/// how tapered runs are discretised.
struct BeamElement {
  int node_a = -1;
  int node_b = -1;
  int section_a = -1;
  int section_b = -1;
  double section_blend = 0.0;
  int material = -1;
  Vec3 orientation = Vec3(0, 1, 0);  // reference direction for the local y axis
  std::string group;
};

/// Concentrated mass. Either an explicit mass in kg, or a material/volume
/// pair (mass = density * volume) so density scaling reaches it.
struct LumpedMass {
  std::string name;
  int node = -1;
  double mass = 0.0;
  int material = -1;
  double volume = 0.0;
  Vec3 rotary_inertia = Vec3::Zero();  // kg m^2 about the global axes
  std::string group;
};

/// Master-slave kinematic constraint: constrained slave DOFs follow the
/// master rigidly (slave translation = master translation + theta x r).
struct RigidLink {
  int master = -1;
  int slave = -1;
  std::array<bool, 6> constrained_dofs = {true, true, true, true, true, true};
};

struct BeamModel {
  std::string name;
  std::vector<Material> materials;
  std::vector<Section> sections;
  std::vector<Node> nodes;
  std::vector<BeamElement> elements;
  std::vector<LumpedMass> lumped_masses;
  std::vector<RigidLink> rigid_links;
  std::vector<int> clamped_nodes;
  std::map<std::string, std::string> metadata;

  int material_index(const std::string& name) const;
  int section_index(const std::string& name) const;
  int lumped_mass_index(const std::string& name) const;
  Material& material(const std::string& name);
  const Material& material(const std::string& name) const;
  Section& section(const std::string& name);
  const Section& section(const std::string& name) const;
  LumpedMass& lumped_mass(const std::string& name);

  /// Blended section properties of one element.
  Section resolved_section(const BeamElement& e) const;
  double element_length(const BeamElement& e) const;
  double lumped_mass_value(const LumpedMass& m) const;

  /// Index of the node closest to `p` (all nodes, slaves included).
  int nearest_node(const Vec3& p) const;
  /// Index of the closest node that is not a rigid-link slave.
  int nearest_master_node(const Vec3& p) const;

  bool is_slave(int node) const;
  bool is_clamped(int node) const;

  /// Total structural mass: sum of rho*A*L over elements plus lumped masses.
  double total_mass() const;
  /// Same sum restricted to elements/masses whose group is in `groups`.
  double group_mass(const std::vector<std::string>& groups) const;

  /// Model with every entity belonging to one of `groups` removed
  /// (elements, masses, links and then-unreferenced nodes).
  BeamModel without_groups(const std::vector<std::string>& groups) const;

  /// Checks all structural invariants; throws ConfigError on violation.
  void validate() const;
};

}  // namespace femu

#include "femu/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace femu {

namespace {

template <typename T>
int index_by_name(const std::vector<T>& items, const std::string& name) {
  for (int i = 0; i < static_cast<int>(items.size()); ++i) {
    if (items[i].name == name) return i;
  }
  return -1;
}

}  // namespace

int BeamModel::material_index(const std::string& n) const { return index_by_name(materials, n); }
int BeamModel::section_index(const std::string& n) const { return index_by_name(sections, n); }
int BeamModel::lumped_mass_index(const std::string& n) const { return index_by_name(lumped_masses, n); }

Material& BeamModel::material(const std::string& n) {
  int i = material_index(n);
  if (i < 0) throw ConfigError("unknown material: " + n);
  return materials[i];
}

const Material& BeamModel::material(const std::string& n) const {
  return const_cast<BeamModel*>(this)->material(n);
}

Section& BeamModel::section(const std::string& n) {
  int i = section_index(n);
  if (i < 0) throw ConfigError("unknown section: " + n);
  return sections[i];
}

const Section& BeamModel::section(const std::string& n) const {
  return const_cast<BeamModel*>(this)->section(n);
}

LumpedMass& BeamModel::lumped_mass(const std::string& n) {
  int i = lumped_mass_index(n);
  if (i < 0) throw ConfigError("unknown lumped mass: " + n);
  return lumped_masses[i];
}

Section BeamModel::resolved_section(const BeamElement& e) const {
  const Section& a = sections.at(e.section_a);
  const Section& b = sections.at(e.section_b);
  const double w = e.section_blend;
  Section s = a;
  s.area = (1.0 - w) * a.area + w * b.area;
  s.i_xx = (1.0 - w) * a.i_xx + w * b.i_xx;
  s.i_yy = (1.0 - w) * a.i_yy + w * b.i_yy;
  s.torsion_j = (1.0 - w) * a.torsion_j + w * b.torsion_j;
  s.shear_correction = (1.0 - w) * a.shear_correction + w * b.shear_correction;
  return s;
}

double BeamModel::element_length(const BeamElement& e) const {
  return (nodes.at(e.node_b).position - nodes.at(e.node_a).position).norm();
}

double BeamModel::lumped_mass_value(const LumpedMass& m) const {
  if (m.volume > 0.0) return materials.at(m.material).density * m.volume;
  return m.mass;
}

int BeamModel::nearest_node(const Vec3& p) const {
  int best = -1;
  double best_d = std::numeric_limits<double>::max();
  for (const Node& n : nodes) {
    const double d = (n.position - p).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = n.id;
    }
  }
  return best;
}

int BeamModel::nearest_master_node(const Vec3& p) const {
  std::vector<char> slave(nodes.size(), 0);
  for (const RigidLink& l : rigid_links) slave[l.slave] = 1;
  int best = -1;
  double best_d = std::numeric_limits<double>::max();
  for (const Node& n : nodes) {
    if (slave[n.id]) continue;
    const double d = (n.position - p).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = n.id;
    }
  }
  return best;
}

bool BeamModel::is_slave(int node) const {
  return std::any_of(rigid_links.begin(), rigid_links.end(),
                     [&](const RigidLink& l) { return l.slave == node; });
}

bool BeamModel::is_clamped(int node) const {
  return std::find(clamped_nodes.begin(), clamped_nodes.end(), node) != clamped_nodes.end();
}

double BeamModel::total_mass() const {
  double m = 0.0;
  for (const BeamElement& e : elements) {
    m += materials.at(e.material).density * resolved_section(e).area * element_length(e);
  }
  for (const LumpedMass& lm : lumped_masses) m += lumped_mass_value(lm);
  return m;
}

double BeamModel::group_mass(const std::vector<std::string>& groups) const {
  auto in = [&](const std::string& g) {
    return std::find(groups.begin(), groups.end(), g) != groups.end();
  };
  double m = 0.0;
  for (const BeamElement& e : elements) {
    if (in(e.group)) m += materials.at(e.material).density * resolved_section(e).area * element_length(e);
  }
  for (const LumpedMass& lm : lumped_masses) {
    if (in(lm.group)) m += lumped_mass_value(lm);
  }
  return m;
}

BeamModel BeamModel::without_groups(const std::vector<std::string>& groups) const {
  auto in = [&](const std::string& g) {
    return std::find(groups.begin(), groups.end(), g) != groups.end();
  };
  BeamModel out = *this;
  out.elements.clear();
  out.lumped_masses.clear();
  out.rigid_links.clear();
  out.nodes.clear();
  out.clamped_nodes.clear();

  std::vector<char> keep_node(nodes.size(), 0);
  for (const BeamElement& e : elements) {
    if (in(e.group)) continue;
    keep_node[e.node_a] = 1;
    keep_node[e.node_b] = 1;
  }
  for (const LumpedMass& lm : lumped_masses) {
    if (in(lm.group)) continue;
    keep_node[lm.node] = 1;
  }
  std::vector<int> remap(nodes.size(), -1);
  for (const Node& n : nodes) {
    if (in(n.group) || !keep_node[n.id]) continue;
    Node nn = n;
    nn.id = static_cast<int>(out.nodes.size());
    remap[n.id] = nn.id;
    out.nodes.push_back(nn);
  }
  for (const BeamElement& e : elements) {
    if (in(e.group)) continue;
    BeamElement ne = e;
    ne.node_a = remap[e.node_a];
    ne.node_b = remap[e.node_b];
    if (ne.node_a < 0 || ne.node_b < 0) throw ConfigError("without_groups: dangling element");
    out.elements.push_back(ne);
  }
  for (const LumpedMass& lm : lumped_masses) {
    if (in(lm.group)) continue;
    LumpedMass nm = lm;
    nm.node = remap[lm.node];
    if (nm.node < 0) throw ConfigError("without_groups: dangling lumped mass");
    out.lumped_masses.push_back(nm);
  }
  for (const RigidLink& l : rigid_links) {
    if (remap[l.master] < 0 || remap[l.slave] < 0) continue;
    RigidLink nl = l;
    nl.master = remap[l.master];
    nl.slave = remap[l.slave];
    out.rigid_links.push_back(nl);
  }
  for (int c : clamped_nodes) {
    if (remap[c] >= 0) out.clamped_nodes.push_back(remap[c]);
  }
  return out;
}

void BeamModel::validate() const {
  for (const Material& m : materials) {
    if (!(m.youngs_modulus > 0.0)) throw ConfigError("material " + m.name + ": E must be > 0");
    if (!(m.density > 0.0)) throw ConfigError("material " + m.name + ": density must be > 0");
    if (!(m.poisson_ratio >= 0.0 && m.poisson_ratio < 0.5))
      throw ConfigError("material " + m.name + ": poisson ratio must be in [0, 0.5)");
  }
  for (const Section& s : sections) {
    if (!(s.area > 0.0 && s.i_xx > 0.0 && s.i_yy > 0.0 && s.torsion_j > 0.0))
      throw ConfigError("section " + s.name + ": area and inertias must be > 0");
    const bool euler = std::isinf(s.shear_correction);
    if (!euler && !(s.shear_correction > 0.0 && s.shear_correction <= 1.0))
      throw ConfigError("section " + s.name + ": shear correction must be in (0, 1] or infinite");
  }
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    if (nodes[i].id != i) throw ConfigError("node ids must be dense and equal to their index");
  }
  const int n = static_cast<int>(nodes.size());
  auto check_node = [&](int id, const std::string& what) {
    if (id < 0 || id >= n) throw ConfigError("unresolved node reference in " + what);
  };
  for (const BeamElement& e : elements) {
    check_node(e.node_a, "element");
    check_node(e.node_b, "element");
    if (e.node_a == e.node_b) throw ConfigError("element endpoints must differ");
    if (e.material < 0 || e.material >= static_cast<int>(materials.size()))
      throw ConfigError("unresolved material reference in element");
    if (e.section_a < 0 || e.section_a >= static_cast<int>(sections.size()) ||
        e.section_b < 0 || e.section_b >= static_cast<int>(sections.size()))
      throw ConfigError("unresolved section reference in element");
    const double len = element_length(e);
    if (!(len > 0.0)) throw ConfigError("zero-length element");
    const Vec3 axis = (nodes[e.node_b].position - nodes[e.node_a].position) / len;
    if (axis.cross(e.orientation).norm() < 1e-9)
      throw ConfigError("element orientation is parallel to the element axis");
  }
  for (const LumpedMass& m : lumped_masses) {
    check_node(m.node, "lumped mass " + m.name);
    if (m.volume > 0.0) {
      if (m.material < 0 || m.material >= static_cast<int>(materials.size()))
        throw ConfigError("lumped mass " + m.name + ": unresolved material");
    } else if (m.mass < 0.0) {
      throw ConfigError("lumped mass " + m.name + ": mass must be >= 0");
    }
    if ((m.rotary_inertia.array() < 0.0).any())
      throw ConfigError("lumped mass " + m.name + ": rotary inertia must be >= 0");
  }
  std::set<int> slaves;
  std::set<int> masters;
  for (const RigidLink& l : rigid_links) {
    check_node(l.master, "rigid link");
    check_node(l.slave, "rigid link");
    if (l.master == l.slave) throw ConfigError("rigid link master equals slave");
    if (!slaves.insert(l.slave).second) throw ConfigError("node is slave in two rigid links");
    masters.insert(l.master);
  }
  for (int s : slaves) {
    if (masters.count(s)) throw ConfigError("rigid link slave chained as master of another link");
  }
  for (int c : clamped_nodes) check_node(c, "clamp");
}

}  // namespace femu

#include "femu/assemble.hpp"

#include <cmath>
#include <vector>

namespace femu {

namespace {

// Timoshenko shear parameter for one bending plane; zero when shear
// flexibility is disabled (infinite shear correction).
double shear_phi(const ElementProperties& p, double inertia, double length) {
  if (std::isinf(p.shear_correction)) return 0.0;
  return 12.0 * p.youngs_modulus * inertia /
         (p.shear_correction * p.shear_modulus * p.area * length * length);
}

// 4x4 bending stiffness in the x-y plane for DOFs (v1, rz1, v2, rz2).
Eigen::Matrix4d bending_stiffness(double ei, double phi, double l) {
  const double c = ei / ((1.0 + phi) * l * l * l);
  Eigen::Matrix4d k;
  k << 12.0, 6.0 * l, -12.0, 6.0 * l,
      6.0 * l, (4.0 + phi) * l * l, -6.0 * l, (2.0 - phi) * l * l,
      -12.0, -6.0 * l, 12.0, -6.0 * l,
      6.0 * l, (2.0 - phi) * l * l, -6.0 * l, (4.0 + phi) * l * l;
  return c * k;
}

// Consistent Timoshenko mass for the same DOFs: translational part plus
// rotary inertia of the cross-section.
Eigen::Matrix4d bending_mass(double rho_a, double rho_i, double phi, double l) {
  const double d = (1.0 + phi) * (1.0 + phi);

  const double a11 = 13.0 / 35.0 + 7.0 * phi / 10.0 + phi * phi / 3.0;
  const double a12 = (11.0 / 210.0 + 11.0 * phi / 120.0 + phi * phi / 24.0) * l;
  const double a13 = 9.0 / 70.0 + 3.0 * phi / 10.0 + phi * phi / 6.0;
  const double a14 = -(13.0 / 420.0 + 3.0 * phi / 40.0 + phi * phi / 24.0) * l;
  const double a22 = (1.0 / 105.0 + phi / 60.0 + phi * phi / 120.0) * l * l;
  const double a24 = -(1.0 / 140.0 + phi / 60.0 + phi * phi / 120.0) * l * l;

  Eigen::Matrix4d mt;
  mt << a11, a12, a13, a14,
      a12, a22, -a14, a24,
      a13, -a14, a11, -a12,
      a14, a24, -a12, a22;
  mt *= rho_a * l / d;

  const double b11 = 6.0 / 5.0;
  const double b12 = (1.0 / 10.0 - phi / 2.0) * l;
  const double b22 = (2.0 / 15.0 + phi / 6.0 + phi * phi / 3.0) * l * l;
  const double b24 = -(1.0 / 30.0 + phi / 6.0 - phi * phi / 6.0) * l * l;

  Eigen::Matrix4d mr;
  mr << b11, b12, -b11, b12,
      b12, b22, -b12, b24,
      -b11, -b12, b11, -b12,
      b12, b24, -b12, b22;
  mr *= rho_i / (d * l);

  return mt + mr;
}

// Mirror that converts an x-y plane 4x4 block to the x-z plane convention
// (theta_y = -dw/dx sign flip on the rotational DOFs).
Eigen::Matrix4d mirror_plane(const Eigen::Matrix4d& m) {
  Eigen::Vector4d d(1.0, -1.0, 1.0, -1.0);
  return d.asDiagonal() * m * d.asDiagonal();
}

void scatter_plane(Matrix& k12, const Eigen::Matrix4d& block, const std::array<int, 4>& idx) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) k12(idx[i], idx[j]) += block(i, j);
}

void scatter_pair(Matrix& k12, double c, int i, int j) {
  k12(i, i) += c;
  k12(j, j) += c;
  k12(i, j) -= c;
  k12(j, i) -= c;
}

void scatter_pair_mass(Matrix& m12, double c, int i, int j) {
  m12(i, i) += c / 3.0;
  m12(j, j) += c / 3.0;
  m12(i, j) += c / 6.0;
  m12(j, i) += c / 6.0;
}

Eigen::Matrix<double, 3, 3> skew(const Vec3& r) {
  Eigen::Matrix3d s;
  s << 0, -r.z(), r.y(),
      r.z(), 0, -r.x(),
      -r.y(), r.x(), 0;
  return s;
}

}  // namespace

Eigen::Matrix3d element_triad(const Vec3& xa, const Vec3& xb, const Vec3& orientation) {
  const Vec3 ex = (xb - xa).normalized();
  Vec3 ez = ex.cross(orientation);
  const double nz = ez.norm();
  if (nz < 1e-9) throw ConfigError("element orientation is parallel to the element axis");
  ez /= nz;
  const Vec3 ey = ez.cross(ex);
  Eigen::Matrix3d r;
  r.row(0) = ex;
  r.row(1) = ey;
  r.row(2) = ez;
  return r;
}

Matrix beam_stiffness_local(const ElementProperties& p, double l) {
  Matrix k = Matrix::Zero(12, 12);
  scatter_pair(k, p.youngs_modulus * p.area / l, 0, 6);
  scatter_pair(k, p.shear_modulus * p.torsion_j / l, 3, 9);

  const double phi_y = shear_phi(p, p.i_yy, l);
  scatter_plane(k, bending_stiffness(p.youngs_modulus * p.i_yy, phi_y, l), {1, 5, 7, 11});

  const double phi_z = shear_phi(p, p.i_xx, l);
  scatter_plane(k, mirror_plane(bending_stiffness(p.youngs_modulus * p.i_xx, phi_z, l)),
                {2, 4, 8, 10});
  return k;
}

Matrix beam_mass_local(const ElementProperties& p, double l) {
  Matrix m = Matrix::Zero(12, 12);
  scatter_pair_mass(m, p.density * p.area * l, 0, 6);
  // Torsional inertia uses the polar second moment of area.
  scatter_pair_mass(m, p.density * (p.i_xx + p.i_yy) * l, 3, 9);

  const double phi_y = shear_phi(p, p.i_yy, l);
  scatter_plane(m, bending_mass(p.density * p.area, p.density * p.i_yy, phi_y, l), {1, 5, 7, 11});

  const double phi_z = shear_phi(p, p.i_xx, l);
  scatter_plane(m, mirror_plane(bending_mass(p.density * p.area, p.density * p.i_xx, phi_z, l)),
                {2, 4, 8, 10});
  return m;
}

namespace {

Matrix to_global(const Matrix& local, const Eigen::Matrix3d& triad) {
  Matrix g = Matrix::Zero(12, 12);
  // Block-diagonal rotation: local = G * global with G = diag(R, R, R, R).
  Matrix big = Matrix::Zero(12, 12);
  for (int b = 0; b < 4; ++b) big.block<3, 3>(3 * b, 3 * b) = triad;
  g.noalias() = big.transpose() * local * big;
  return g;
}

}  // namespace

Matrix beam_stiffness_global(const ElementProperties& p, const Vec3& xa, const Vec3& xb,
                             const Vec3& orientation) {
  const double l = (xb - xa).norm();
  return to_global(beam_stiffness_local(p, l), element_triad(xa, xb, orientation));
}

Matrix beam_mass_global(const ElementProperties& p, const Vec3& xa, const Vec3& xb,
                        const Vec3& orientation) {
  const double l = (xb - xa).norm();
  return to_global(beam_mass_local(p, l), element_triad(xa, xb, orientation));
}

ElementProperties resolve_element(const BeamModel& model, const BeamElement& e) {
  const Material& mat = model.materials.at(e.material);
  const Section sec = model.resolved_section(e);
  ElementProperties p;
  p.youngs_modulus = mat.youngs_modulus;
  p.shear_modulus = mat.shear_modulus();
  p.density = mat.density;
  p.area = sec.area;
  p.i_xx = sec.i_xx;
  p.i_yy = sec.i_yy;
  p.torsion_j = sec.torsion_j;
  p.shear_correction = sec.shear_correction;
  return p;
}

Vector AssembledSystem::expand(const Vector& reduced) const {
  return transform * reduced;
}

AssembledSystem assemble_system(const BeamModel& model) {
  model.validate();

  const int n_nodes = static_cast<int>(model.nodes.size());
  const int n = 6 * n_nodes;

  AssembledSystem sys;
  sys.mass = Matrix::Zero(n, n);
  sys.stiffness = Matrix::Zero(n, n);
  sys.nodes = model.nodes;
  sys.slave_node.assign(n_nodes, 0);

  for (const BeamElement& e : model.elements) {
    const Vec3 xa = model.nodes[e.node_a].position;
    const Vec3 xb = model.nodes[e.node_b].position;
    const double l = (xb - xa).norm();
    if (!(l > 0.0)) throw ConfigError("zero-length element");
    sys.max_element_length = std::max(sys.max_element_length, l);

    const ElementProperties p = resolve_element(model, e);
    const Eigen::Matrix3d triad = element_triad(xa, xb, e.orientation);
    const Matrix ke = to_global(beam_stiffness_local(p, l), triad);
    const Matrix me = to_global(beam_mass_local(p, l), triad);

    const std::array<int, 2> en = {e.node_a, e.node_b};
    for (int bi = 0; bi < 2; ++bi) {
      for (int bj = 0; bj < 2; ++bj) {
        sys.stiffness.block<6, 6>(6 * en[bi], 6 * en[bj]) += ke.block<6, 6>(6 * bi, 6 * bj);
        sys.mass.block<6, 6>(6 * en[bi], 6 * en[bj]) += me.block<6, 6>(6 * bi, 6 * bj);
      }
    }
  }

  for (const LumpedMass& lm : model.lumped_masses) {
    const double m = model.lumped_mass_value(lm);
    const int base = 6 * lm.node;
    for (int c = 0; c < 3; ++c) sys.mass(base + c, base + c) += m;
    for (int c = 0; c < 3; ++c) sys.mass(base + 3 + c, base + 3 + c) += lm.rotary_inertia[c];
  }

  // Constraint transform: one column per independent DOF. Clamped DOFs and
  // constrained slave DOFs get no column; constrained slave DOFs get rows
  // expressing the rigid-body kinematics u_s = u_m - skew(r) * theta_m.
  std::vector<char> clamped(n, 0);
  for (int c : model.clamped_nodes)
    for (int d = 0; d < 6; ++d) clamped[6 * c + d] = 1;

  std::vector<int> slave_of(n_nodes, -1);
  for (int li = 0; li < static_cast<int>(model.rigid_links.size()); ++li) {
    slave_of[model.rigid_links[li].slave] = li;
    sys.slave_node[model.rigid_links[li].slave] = 1;
  }

  std::vector<int> column(n, -1);
  int m_cols = 0;
  for (int nd = 0; nd < n_nodes; ++nd) {
    const int li = slave_of[nd];
    for (int d = 0; d < 6; ++d) {
      const int g = 6 * nd + d;
      if (clamped[g]) continue;
      if (li >= 0 && model.rigid_links[li].constrained_dofs[d]) continue;
      column[g] = m_cols++;
      sys.reduced_to_full.push_back(g);
    }
  }

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(n + 6 * model.rigid_links.size());
  for (int g = 0; g < n; ++g) {
    if (column[g] >= 0) trips.emplace_back(g, column[g], 1.0);
  }
  for (const RigidLink& l : model.rigid_links) {
    const Vec3 r = model.nodes[l.slave].position - model.nodes[l.master].position;
    const Eigen::Matrix3d lever = -skew(r);  // u_s = u_m + theta_m x r
    for (int d = 0; d < 6; ++d) {
      if (!l.constrained_dofs[d]) continue;
      const int row = 6 * l.slave + d;
      if (clamped[row]) continue;
      if (d < 3) {
        const int mc = column[6 * l.master + d];
        if (mc >= 0) trips.emplace_back(row, mc, 1.0);
        for (int k = 0; k < 3; ++k) {
          const int rc = column[6 * l.master + 3 + k];
          if (rc >= 0 && lever(d, k) != 0.0) trips.emplace_back(row, rc, lever(d, k));
        }
      } else {
        const int rc = column[6 * l.master + d];
        if (rc >= 0) trips.emplace_back(row, rc, 1.0);
      }
    }
  }

  sys.transform.resize(n, m_cols);
  sys.transform.setFromTriplets(trips.begin(), trips.end());

  const Matrix kt = sys.stiffness * sys.transform;
  const Matrix mt = sys.mass * sys.transform;
  sys.reduced_stiffness.noalias() = sys.transform.transpose() * kt;
  sys.reduced_mass.noalias() = sys.transform.transpose() * mt;

  return sys;
}

}  // namespace femu

#include "femu/modal.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace femu {

ModalSolution solve_modes(const AssembledSystem& system, double f_max, int n_max,
                          const ClassifyOptions& options) {
  if (!(f_max > 0.0)) throw ConfigError("f_max must be > 0");
  const Matrix& k = system.reduced_stiffness;
  const Matrix& m = system.reduced_mass;
  if (k.rows() == 0) throw ConfigError("empty reduced system");

  Eigen::LLT<Matrix> mass_chol(m);
  if (mass_chol.info() != Eigen::Success)
    throw NumericalError("reduced mass matrix is not positive definite");

  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(k, m,
                                                          Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");

  const Vector eigenvalues = solver.eigenvalues();
  const double scale = std::max(eigenvalues.cwiseAbs().maxCoeff(), 1.0);

  std::vector<int> keep;
  for (int i = 0; i < eigenvalues.size(); ++i) {
    double lambda = eigenvalues[i];
    if (lambda < 0.0) {
      if (lambda < -1e-8 * scale) throw NumericalError("stiffness matrix is not positive semi-definite");
      lambda = 0.0;
    }
    const double f = rad_to_hz(std::sqrt(lambda));
    if (f <= f_max) keep.push_back(i);
    if (n_max > 0 && static_cast<int>(keep.size()) >= n_max) break;
  }

  ModalSolution out;
  out.frequencies.resize(keep.size());
  out.shapes.resize(k.rows(), static_cast<Eigen::Index>(keep.size()));
  for (int j = 0; j < static_cast<int>(keep.size()); ++j) {
    out.frequencies[j] = rad_to_hz(std::sqrt(std::max(eigenvalues[keep[j]], 0.0)));
    out.shapes.col(j) = solver.eigenvectors().col(keep[j]);
  }

  out.energies.reserve(keep.size());
  out.classification.reserve(keep.size());
  for (int j = 0; j < static_cast<int>(keep.size()); ++j) {
    const Vector full = system.expand(out.shapes.col(j));
    const Vector mfull = system.mass * full;
    ModeEnergy e;
    double total = 0.0;
    for (int g = 0; g < full.size(); ++g) {
      const double contrib = full[g] * mfull[g];
      total += contrib;
      switch (g % 6) {
        case 1: e.vertical += contrib; break;
        case 2: e.lateral += contrib; break;
        case 3: e.torsional += contrib; break;
        default: e.other += contrib; break;
      }
    }
    if (total > 0.0) {
      e.vertical /= total;
      e.lateral /= total;
      e.torsional /= total;
      e.other /= total;
    }
    out.energies.push_back(e);
    if (e.vertical >= options.dominance) {
      out.classification.emplace_back("bending");
    } else if (e.lateral >= options.dominance) {
      out.classification.emplace_back("lagging");
    } else if (e.torsional >= options.dominance) {
      out.classification.emplace_back("torsion");
    } else {
      out.classification.emplace_back("coupled");
    }
  }
  return out;
}

RayleighCoefficients fit_rayleigh(const std::vector<std::pair<double, double>>& omega_zeta) {
  std::vector<double> distinct;
  for (const auto& [w, z] : omega_zeta) {
    (void)z;
    if (!(w > 0.0)) throw ConfigError("rayleigh fit needs positive frequencies");
    bool found = false;
    for (double d : distinct) found = found || std::abs(d - w) < 1e-12 * std::max(1.0, d);
    if (!found) distinct.push_back(w);
  }
  if (distinct.size() < 2)
    throw ConfigError("rayleigh fit is underdetermined: needs two distinct frequencies");

  const int n = static_cast<int>(omega_zeta.size());
  Matrix a(n, 2);
  Vector b(n);
  for (int i = 0; i < n; ++i) {
    const double w = omega_zeta[i].first;
    a(i, 0) = 0.5 / w;
    a(i, 1) = 0.5 * w;
    b[i] = omega_zeta[i].second;
  }
  const Eigen::Vector2d x = a.colPivHouseholderQr().solve(b);
  RayleighCoefficients c;
  c.alpha = x[0];
  c.beta = x[1];
  c.residual = (a * x - b).norm();
  return c;
}

double rayleigh_damping_ratio(const RayleighCoefficients& c, double omega) {
  return 0.5 * (c.alpha / omega + c.beta * omega);
}

void apply_rayleigh(ModalSolution& solution, const RayleighCoefficients& c) {
  const int n = solution.mode_count();
  solution.damping_ratios.resize(n);
  solution.damped_frequencies.resize(n);
  for (int i = 0; i < n; ++i) {
    const double w = hz_to_rad(solution.frequencies[i]);
    const double zeta = w > 1e-12 ? rayleigh_damping_ratio(c, w) : 0.0;
    solution.damping_ratios[i] = zeta;
    const double under = std::max(0.0, 1.0 - zeta * zeta);
    solution.damped_frequencies[i] = solution.frequencies[i] * std::sqrt(under);
  }
}

}  // namespace femu

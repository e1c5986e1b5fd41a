#pragma once

#include <string>
#include <utility>
#include <vector>

#include "femu/assemble.hpp"
#include "femu/types.hpp"

namespace femu {

/// Kinetic-energy split of one mode over DOF families, fractions of 1.
struct ModeEnergy {
  double vertical = 0.0;   // uy
  double lateral = 0.0;    // uz
  double torsional = 0.0;  // rx
  double other = 0.0;
};

struct ModalSolution {
  Vector frequencies;  // Hz, ascending
  Matrix shapes;       // reduced DOFs x n_modes, mass normalized
  std::vector<std::string> classification;  // bending | lagging | torsion | coupled
  std::vector<ModeEnergy> energies;
  Vector damping_ratios;       // filled by apply_rayleigh
  Vector damped_frequencies;   // Hz, filled by apply_rayleigh

  int mode_count() const { return static_cast<int>(frequencies.size()); }
};

struct ClassifyOptions {
  double dominance = 0.9;  // energy fraction above which a mode is "pure"
};

/// Solves K phi = omega^2 M phi on the reduced system and returns all modes
/// with f <= f_max (at most n_max when n_max > 0), mass normalized.
ModalSolution solve_modes(const AssembledSystem& system, double f_max = 150.0, int n_max = 0,
                          const ClassifyOptions& options = {});

/// Proportional damping C = alpha M + beta K.
struct RayleighCoefficients {
  double alpha = 0.0;  // 1/s
  double beta = 0.0;   // s
  double residual = 0.0;  // least-squares misfit of the fit points
};

/// Least-squares fit of zeta = (alpha/omega + beta*omega) / 2 through
/// (omega [rad/s], zeta) pairs. Needs at least two distinct frequencies.
RayleighCoefficients fit_rayleigh(const std::vector<std::pair<double, double>>& omega_zeta);

double rayleigh_damping_ratio(const RayleighCoefficients& c, double omega);

/// Fills per-mode damping ratios and damped frequencies
/// (f_d = f sqrt(1 - zeta^2)); mode shapes are untouched since proportional
/// damping leaves the eigenvectors of the undamped problem unchanged.
void apply_rayleigh(ModalSolution& solution, const RayleighCoefficients& c);

}  // namespace femu

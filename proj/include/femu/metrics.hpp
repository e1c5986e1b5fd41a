#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "femu/sensors.hpp"
#include "femu/types.hpp"

namespace femu {

struct ExperimentalMode {
  double frequency_hz = 0.0;
  double damping_ratio = 0.0;
  Vector shape;  // one value per sensor
  std::string label;
};

struct ExperimentalDataset {
  std::string specimen;
  std::vector<Sensor> sensor_layout;
  std::vector<ExperimentalMode> modes;
  std::map<std::string, std::string> metadata;

  Matrix shape_matrix() const;  // sensors x modes
  Vector frequency_vector() const;
  void validate() const;
};

/// Modal assurance criterion |a.b|^2 / ((a.a)(b.b)), in [0, 1].
double mac(const Vector& a, const Vector& b);

/// Real shape from a complex identified one: rotate by the phase that
/// maximizes the norm of the real part, then take it.
Vector realize_complex_shape(const std::vector<std::complex<double>>& shape);

struct ModePair {
  int exp_index = -1;
  int num_index = -1;
  double mac_value = 0.0;
};

struct ModePairing {
  std::vector<ModePair> pairs;
  std::vector<int> unmatched_exp;
  std::vector<int> unmatched_num;
};

/// Greedy best-MAC assignment in descending MAC order, each side used at most
/// once; candidates below `floor` are rejected. Ties break toward the lowest
/// (exp, num) indices so the pairing is deterministic.
/// Throws NumericalError when no pair reaches the floor.
ModePairing pair_modes(const Matrix& exp_shapes, const Matrix& num_shapes, double floor = 0.5);
ModePairing pair_modes(const ExperimentalDataset& exp, const Matrix& num_shapes,
                       double floor = 0.5);

/// Modified total MAC over the paired modes:
/// 1 - prod_i MAC_i / (1 + |f_i^N - f_i^E| / |f_i^N + f_i^E|).
/// Zero for a perfect match, bounded by [0, 1] while all MAC values are.
double mtmac(const ModePairing& pairing, const Vector& exp_freqs, const Vector& num_freqs);

}  // namespace femu

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace femu {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

/// Malformed configuration, unresolved reference, or invalid user input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solve failed numerically (singular system, non-convergence, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kPi = 3.14159265358979323846;

inline double hz_to_rad(double f) { return 2.0 * kPi * f; }
inline double rad_to_hz(double w) { return w / (2.0 * kPi); }

}  // namespace femu

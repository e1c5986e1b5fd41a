#pragma once

#include <Eigen/Cholesky>
#include <cstdint>

#include "femu/lhs.hpp"
#include "femu/types.hpp"

namespace femu {

struct Design {
  Matrix points;  // k x d
  Vector values;  // k

  int size() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }
  void append(const Vector& x, double y);
  /// Throws on non-finite values or duplicate points (within 1e-10).
  void validate() const;
};

/// Ordinary Kriging with anisotropic Gaussian correlation
/// exp(-sum_j theta_j (x_j - x'_j)^2), hyperparameters from maximizing the
/// concentrated log-likelihood. Inputs are normalized to the design's
/// per-dimension range internally, so the predictor is invariant under affine
/// rescaling of the inputs.
struct KrigingModel {
  Matrix points;           // original coordinates, k x d
  Vector values;           // k
  Vector theta;            // d, in normalized coordinates
  double process_mean = 0.0;
  double process_variance = 0.0;
  double nugget = 0.0;
  bool constant = false;   // degenerate all-equal design

  // Normalization and factorization internals.
  Vector scale_offset;     // d
  Vector scale_range;      // d, >= tiny
  Matrix normalized;       // k x d
  Eigen::LLT<Matrix> correlation_chol;
  Vector alpha;            // R^{-1} (y - mu 1)
  Vector rinv_ones;        // R^{-1} 1
  double ones_rinv_ones = 0.0;

  double y_min() const { return values.minCoeff(); }
  Vector best_point() const;
};

struct Prediction {
  double mean = 0.0;
  double sd = 0.0;
  bool extrapolated = false;  // outside the design's bounding box
};

/// `theta_hint` (normalized coordinates) warm-starts the likelihood search,
/// e.g. with the previous model's hyperparameters when refitting a grown
/// design.
KrigingModel kriging_fit(const Design& design, std::uint64_t seed = 0x9e3779b97f4a7c15ull,
                         const Vector* theta_hint = nullptr);

Prediction predict(const KrigingModel& model, const Vector& x);

/// Expected improvement below `y_min` under a Normal(mean, sd^2) predictive
/// distribution; the closed form (y_min - mu) Phi(z) + sd phi(z).
double expected_improvement(double mean, double sd, double y_min);
double expected_improvement(const KrigingModel& model, const Vector& x, double y_min);

}  // namespace femu

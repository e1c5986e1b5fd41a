#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "femu/kriging.hpp"
#include "femu/lhs.hpp"
#include "femu/types.hpp"

namespace femu {

/// Deterministic scalar objective; may throw or return NaN to signal a failed
/// evaluation (the point is recorded and excluded from the surrogate fit).
using Objective = std::function<double(const Vector&)>;

struct OptimizerConfig {
  int initial_samples = 0;   // 0 -> max(10, 2 d); must end up >= d + 1
  int max_evaluations = 100; // total objective-evaluation budget
  double ei_ratio = 0.01;    // stop when max EI < ratio * max(|best|, 1e-3)
  std::uint64_t seed = 0;
  double shrink_factor = 0.2; // refinement box size, fraction of current range
  int max_refinements = 2;
  int threads = 1;
  Matrix extra_initial_points;  // rows evaluated along with the LHS seed

  int resolved_initial_samples(int dim) const;
  void validate(int dim) const;
};

struct Evaluation {
  Vector point;
  double value = 0.0;
  double ei = 0.0;  // EI at infill time; zero for seed points
  bool failed = false;
  int round = 0;     // refinement round (0 = initial box)
  std::string phase; // "seed" | "infill"
};

/// `evaluation_count` == history.size() and includes the initial samples;
/// `best_value` is the minimum over all successful evaluations.
struct OptimizerResult {
  Vector best_point;
  double best_value = std::numeric_limits<double>::quiet_NaN();
  int evaluation_count = 0;
  int seed_count = 0;
  std::vector<Evaluation> history;
  std::string termination;

  bool has_best() const { return best_point.size() > 0; }
};

/// Efficient global optimization: LHS seed, then iterate
/// { fit Kriging -> maximize EI -> evaluate infill } until the EI ratio rule,
/// the budget, or a stalled (duplicate) infill stops it.
OptimizerResult ego_minimize(const Objective& objective, const Bounds& bounds,
                             const OptimizerConfig& config);

/// EGO plus refinement and selection: after each converged run the bounds
/// shrink around the incumbent (clipped to the original box), the in-box
/// design points are retained, and the loop reruns up to `max_refinements`
/// times. The reported optimum is the best observed point across all rounds.
OptimizerResult rego_minimize(const Objective& objective, const Bounds& bounds,
                              const OptimizerConfig& config);

}  // namespace femu

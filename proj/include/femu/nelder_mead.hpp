#pragma once

#include <functional>

#include "femu/types.hpp"

namespace femu {

struct NelderMeadOptions {
  int max_iterations = 200;
  double f_tolerance = 1e-10;
  double x_tolerance = 1e-10;
};

struct NelderMeadResult {
  Vector x;
  double value = 0.0;
  int iterations = 0;
};

/// Plain downhill-simplex minimization started from `x0` with per-dimension
/// initial step `step`. The objective must be defined everywhere it is asked
/// (clip inside the callable for box constraints).
NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                             const Vector& step, const NelderMeadOptions& options = {});

}  // namespace femu

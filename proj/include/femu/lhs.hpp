#pragma once

#include <cstdint>

#include "femu/types.hpp"

namespace femu {

struct Bounds {
  Vector lower;
  Vector upper;

  int dim() const { return static_cast<int>(lower.size()); }
  void validate() const;
  bool contains(const Vector& x, double tol = 0.0) const;
  Vector clip(const Vector& x) const;
  static Bounds unit(int d);
  static Bounds uniform(int d, double lo, double hi);
};

/// Latin hypercube sample: n points, each 1-D projection hitting each of the
/// n equal strata exactly once. Deterministic for a given seed.
Matrix lhs_sample(const Bounds& bounds, int n, std::uint64_t seed);

}  // namespace femu

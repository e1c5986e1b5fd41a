#include "femu/lhs.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace femu {

void Bounds::validate() const {
  if (lower.size() != upper.size() || lower.size() == 0)
    throw ConfigError("bounds: lower/upper must have equal, nonzero size");
  for (int i = 0; i < dim(); ++i) {
    if (!(lower[i] < upper[i])) throw ConfigError("bounds: lower must be < upper in every dimension");
  }
}

bool Bounds::contains(const Vector& x, double tol) const {
  if (x.size() != lower.size()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
  }
  return true;
}

Vector Bounds::clip(const Vector& x) const {
  return x.cwiseMax(lower).cwiseMin(upper);
}

Bounds Bounds::unit(int d) { return uniform(d, 0.0, 1.0); }

Bounds Bounds::uniform(int d, double lo, double hi) {
  Bounds b;
  b.lower = Vector::Constant(d, lo);
  b.upper = Vector::Constant(d, hi);
  return b;
}

namespace {

// Uniform draw strictly inside (0, 1).
double open_unit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) / 9007199254740992.0;
}

}  // namespace

Matrix lhs_sample(const Bounds& bounds, int n, std::uint64_t seed) {
  bounds.validate();
  if (n < 1) throw ConfigError("lhs_sample: n must be >= 1");
  const int d = bounds.dim();

  std::mt19937_64 rng(seed);
  Matrix points(n, d);
  std::vector<int> strata(n);
  for (int j = 0; j < d; ++j) {
    std::iota(strata.begin(), strata.end(), 0);
    std::shuffle(strata.begin(), strata.end(), rng);
    for (int i = 0; i < n; ++i) {
      const double u = (strata[i] + open_unit(rng)) / n;
      points(i, j) = bounds.lower[j] + u * (bounds.upper[j] - bounds.lower[j]);
    }
  }
  return points;
}

}  // namespace femu

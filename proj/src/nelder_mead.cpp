#include "femu/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace femu {

NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                             const Vector& step, const NelderMeadOptions& options) {
  const int d = static_cast<int>(x0.size());
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  std::vector<Vector> xs(d + 1, x0);
  std::vector<double> fs(d + 1);
  for (int i = 1; i <= d; ++i) xs[i][i - 1] += step[i - 1];
  for (int i = 0; i <= d; ++i) fs[i] = f(xs[i]);

  std::vector<int> order(d + 1);
  int iterations = 0;
  for (; iterations < options.max_iterations; ++iterations) {
    for (int i = 0; i <= d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });

    const int best = order[0], worst = order[d], second_worst = order[d - 1];
    if (std::abs(fs[worst] - fs[best]) <= options.f_tolerance &&
        (xs[worst] - xs[best]).norm() <= options.x_tolerance)
      break;

    Vector centroid = Vector::Zero(d);
    for (int i = 0; i <= d; ++i) {
      if (i != worst) centroid += xs[i];
    }
    centroid /= d;

    const Vector reflected = centroid + alpha * (centroid - xs[worst]);
    const double fr = f(reflected);
    if (fr < fs[best]) {
      const Vector expanded = centroid + gamma * (reflected - centroid);
      const double fe = f(expanded);
      if (fe < fr) {
        xs[worst] = expanded;
        fs[worst] = fe;
      } else {
        xs[worst] = reflected;
        fs[worst] = fr;
      }
    } else if (fr < fs[second_worst]) {
      xs[worst] = reflected;
      fs[worst] = fr;
    } else {
      const Vector contracted = centroid + rho * (xs[worst] - centroid);
      const double fc = f(contracted);
      if (fc < fs[worst]) {
        xs[worst] = contracted;
        fs[worst] = fc;
      } else {
        for (int i = 0; i <= d; ++i) {
          if (i == best) continue;
          xs[i] = xs[best] + sigma * (xs[i] - xs[best]);
          fs[i] = f(xs[i]);
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i <= d; ++i) {
    if (fs[i] < fs[best]) best = i;
  }
  return {xs[best], fs[best], iterations};
}

}  // namespace femu

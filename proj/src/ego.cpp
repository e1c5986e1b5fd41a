#include "femu/ego.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "femu/nelder_mead.hpp"

namespace femu {

namespace {

constexpr double kDuplicateTolerance = 1e-10;

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || n < 4) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  const int workers = std::min(threads, n);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

double evaluate_guarded(const Objective& objective, const Vector& x) {
  try {
    return objective(x);
  } catch (const std::exception&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

bool duplicates_design(const Design& design, const Vector& x) {
  for (int i = 0; i < design.size(); ++i) {
    if ((design.points.row(i).transpose() - x).cwiseAbs().maxCoeff() < kDuplicateTolerance)
      return true;
  }
  return false;
}

struct RunState {
  OptimizerResult result;
  Design design;  // successful evaluations only
  int budget_left = 0;
  Vector theta_warm;
};

void record(RunState& state, const Vector& x, double value, double ei, int round,
            const char* phase) {
  Evaluation e;
  e.point = x;
  e.value = value;
  e.ei = ei;
  e.failed = !std::isfinite(value);
  e.round = round;
  e.phase = phase;
  state.result.history.push_back(std::move(e));
  state.result.evaluation_count = static_cast<int>(state.result.history.size());
  if (std::string(phase) == "seed") ++state.result.seed_count;
  --state.budget_left;
  if (!std::isfinite(value)) return;
  if (!state.result.has_best() || value < state.result.best_value) {
    state.result.best_value = value;
    state.result.best_point = x;
  }
  state.design.append(x, value);
}

// Evaluates a batch of points (rows), deterministically regardless of thread
// count, respecting the remaining budget.
void evaluate_batch(RunState& state, const Objective& objective, const Matrix& points, int round,
                    const char* phase, int threads) {
  const int n = std::min<int>(static_cast<int>(points.rows()), state.budget_left);
  std::vector<double> values(n);
  parallel_for(n, threads, [&](int i) { values[i] = evaluate_guarded(objective, points.row(i)); });
  for (int i = 0; i < n; ++i) record(state, points.row(i), values[i], 0.0, round, phase);
}

// Multi-start EI maximization over `bounds`: best 10 of 1000 d uniform
// candidates, each polished with a bounded simplex search.
std::pair<Vector, double> maximize_ei(const KrigingModel& model, const Bounds& bounds,
                                      std::mt19937_64& rng, int threads) {
  const int d = bounds.dim();
  const int n_cand = std::min(1000 * d, 20000);
  const double y_min = model.y_min();

  Matrix candidates(n_cand, d);
  for (int i = 0; i < n_cand; ++i) {
    for (int j = 0; j < d; ++j) {
      const double u = (static_cast<double>(rng() >> 11) + 0.5) / 9007199254740992.0;
      candidates(i, j) = bounds.lower[j] + u * (bounds.upper[j] - bounds.lower[j]);
    }
  }

  std::vector<double> ei(n_cand);
  parallel_for(n_cand, threads,
               [&](int i) { ei[i] = expected_improvement(model, candidates.row(i), y_min); });

  std::vector<int> order(n_cand);
  for (int i = 0; i < n_cand; ++i) order[i] = i;
  const int keep = std::min(10, n_cand);
  std::partial_sort(order.begin(), order.begin() + keep, order.end(), [&](int a, int b) {
    if (ei[a] != ei[b]) return ei[a] > ei[b];
    return a < b;
  });

  Vector best_x = candidates.row(order[0]);
  double best_ei = ei[order[0]];

  NelderMeadOptions nm;
  nm.max_iterations = 60;
  nm.f_tolerance = 1e-12;
  nm.x_tolerance = 1e-10;
  const Vector step = (bounds.upper - bounds.lower) / 20.0;

  std::vector<Vector> polished(keep);
  std::vector<double> polished_ei(keep);
  parallel_for(keep, threads, [&](int s) {
    auto neg_ei = [&](const Vector& x) {
      return -expected_improvement(model, bounds.clip(x), y_min);
    };
    const NelderMeadResult res = nelder_mead(neg_ei, candidates.row(order[s]), step, nm);
    polished[s] = bounds.clip(res.x);
    polished_ei[s] = -res.value;
  });
  for (int s = 0; s < keep; ++s) {
    if (polished_ei[s] > best_ei) {
      best_ei = polished_ei[s];
      best_x = polished[s];
    }
  }
  return {best_x, best_ei};
}

// One EGO run on `bounds`. `warm` rows are pre-evaluated design points carried
// over from earlier refinement rounds (not re-evaluated, not counted again).
void ego_run(RunState& state, const Objective& objective, const Bounds& bounds,
             const OptimizerConfig& config, int round, std::mt19937_64& master,
             bool seed_with_lhs) {
  const int d = bounds.dim();
  const std::uint64_t lhs_seed = master();
  std::mt19937_64 candidate_rng(master());

  if (seed_with_lhs && state.budget_left > 0) {
    Matrix seeds = lhs_sample(bounds, config.resolved_initial_samples(d), lhs_seed);
    if (round == 0 && config.extra_initial_points.rows() > 0) {
      Matrix merged(seeds.rows() + config.extra_initial_points.rows(), d);
      merged.topRows(config.extra_initial_points.rows()) = config.extra_initial_points;
      merged.bottomRows(seeds.rows()) = seeds;
      seeds = std::move(merged);
    }
    evaluate_batch(state, objective, seeds, round, "seed", config.threads);
  } else if (state.design.size() < d + 1 && state.budget_left > 0) {
    // Refinement round with too few retained points: top up inside the box.
    const int need = d + 2 - state.design.size();
    Matrix seeds = lhs_sample(bounds, need, lhs_seed);
    evaluate_batch(state, objective, seeds, round, "seed", config.threads);
  }

  while (true) {
    if (state.design.size() < d + 1) {
      state.result.termination = "insufficient_data";
      return;
    }
    const Vector* hint = state.theta_warm.size() == d ? &state.theta_warm : nullptr;
    KrigingModel model;
    try {
      model = kriging_fit(state.design, 0x9e3779b97f4a7c15ull, hint);
    } catch (const NumericalError&) {
      state.result.termination = "surrogate_failure";
      return;
    }
    state.theta_warm = model.theta;

    const auto [x_star, ei_star] = maximize_ei(model, bounds, candidate_rng, config.threads);

    const double scale = std::max(std::abs(state.result.best_value), 1e-3);
    if (ei_star < config.ei_ratio * scale) {
      state.result.termination = "ei_ratio";
      return;
    }
    if (state.budget_left <= 0) {
      state.result.termination = "budget";
      return;
    }
    if (duplicates_design(state.design, x_star)) {
      state.result.termination = "stalled";
      return;
    }

    const double value = evaluate_guarded(objective, x_star);
    record(state, x_star, value, ei_star, round, "infill");
  }
}

Bounds shrink_bounds(const Bounds& original, const Bounds& current, const Vector& center,
                     double factor) {
  Bounds next;
  next.lower.resize(original.dim());
  next.upper.resize(original.dim());
  for (int j = 0; j < original.dim(); ++j) {
    const double half = 0.5 * factor * (current.upper[j] - current.lower[j]);
    next.lower[j] = std::max(original.lower[j], center[j] - half);
    next.upper[j] = std::min(original.upper[j], center[j] + half);
  }
  return next;
}

}  // namespace

int OptimizerConfig::resolved_initial_samples(int dim) const {
  return initial_samples > 0 ? initial_samples : std::max(10, 2 * dim);
}

void OptimizerConfig::validate(int dim) const {
  if (max_evaluations < 0) throw ConfigError("optimizer: max_evaluations must be >= 0");
  if (!(ei_ratio > 0.0 && ei_ratio < 1.0)) throw ConfigError("optimizer: ei_ratio must be in (0, 1)");
  if (resolved_initial_samples(dim) < dim + 1)
    throw ConfigError("optimizer: initial samples must be >= d + 1");
  if (!(shrink_factor > 0.0)) throw ConfigError("optimizer: shrink factor must be > 0");
  if (max_refinements < 0) throw ConfigError("optimizer: max_refinements must be >= 0");
  if (extra_initial_points.rows() > 0 && extra_initial_points.cols() != dim)
    throw ConfigError("optimizer: extra initial points have wrong dimension");
}

OptimizerResult ego_minimize(const Objective& objective, const Bounds& bounds,
                             const OptimizerConfig& config) {
  bounds.validate();
  config.validate(bounds.dim());

  RunState state;
  state.budget_left = config.max_evaluations;
  std::mt19937_64 master(config.seed);
  if (state.budget_left == 0) {
    state.result.termination = "budget";
    return state.result;
  }
  ego_run(state, objective, bounds, config, 0, master, true);
  if (state.result.termination.empty()) state.result.termination = "budget";
  return state.result;
}

OptimizerResult rego_minimize(const Objective& objective, const Bounds& bounds,
                              const OptimizerConfig& config) {
  bounds.validate();
  config.validate(bounds.dim());

  RunState state;
  state.budget_left = config.max_evaluations;
  std::mt19937_64 master(config.seed);
  if (state.budget_left == 0) {
    state.result.termination = "budget";
    return state.result;
  }

  Bounds current = bounds;
  ego_run(state, objective, bounds, config, 0, master, true);

  for (int round = 1; round <= config.max_refinements; ++round) {
    if (!state.result.has_best() || state.budget_left <= 0) break;

    const Bounds next = shrink_bounds(bounds, current, state.result.best_point,
                                      config.shrink_factor);
    bool changed = false;
    for (int j = 0; j < bounds.dim(); ++j) {
      changed = changed || next.lower[j] > current.lower[j] + 1e-15 ||
                next.upper[j] < current.upper[j] - 1e-15;
      if (!(next.lower[j] < next.upper[j])) return state.result;  // degenerate box
    }
    if (!changed) break;  // shrink factor >= 1: identical to plain EGO
    current = next;

    // Selection keeps every observation; the surrogate restarts from the
    // points retained inside the refined box.
    Design retained;
    for (const Evaluation& e : state.result.history) {
      if (e.failed || !current.contains(e.point)) continue;
      if (duplicates_design(retained, e.point)) continue;
      retained.append(e.point, e.value);
    }
    state.design = std::move(retained);
    state.theta_warm.resize(0);

    ego_run(state, objective, current, config, round, master, false);
  }

  if (state.result.termination.empty()) state.result.termination = "budget";
  return state.result;
}

}  // namespace femu

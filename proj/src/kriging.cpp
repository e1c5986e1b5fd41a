#include "femu/kriging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "femu/nelder_mead.hpp"

namespace femu {

namespace {

constexpr double kNuggetFloor = 1e-10;
constexpr double kNuggetCeil = 1e-6;
constexpr double kLogThetaMin = -3.0;  // log10 bounds of the theta search box
constexpr double kLogThetaMax = 3.0;

Matrix normalize_points(const Matrix& points, Vector& offset, Vector& range) {
  const int d = static_cast<int>(points.cols());
  offset.resize(d);
  range.resize(d);
  for (int j = 0; j < d; ++j) {
    const double lo = points.col(j).minCoeff();
    const double hi = points.col(j).maxCoeff();
    offset[j] = lo;
    range[j] = (hi - lo) > 1e-300 ? (hi - lo) : 1.0;
  }
  Matrix out = points;
  for (int j = 0; j < d; ++j) out.col(j) = (out.col(j).array() - offset[j]) / range[j];
  return out;
}

Matrix correlation_matrix(const Matrix& x, const Vector& theta, double nugget) {
  const int k = static_cast<int>(x.rows());
  Matrix r(k, k);
  for (int i = 0; i < k; ++i) {
    r(i, i) = 1.0 + nugget;
    for (int j = i + 1; j < k; ++j) {
      const Vector diff = x.row(i) - x.row(j);
      const double e = (theta.array() * diff.array().square()).sum();
      r(i, j) = r(j, i) = std::exp(-e);
    }
  }
  return r;
}

struct LikelihoodEval {
  bool ok = false;
  double log_likelihood = -std::numeric_limits<double>::infinity();
  double mean = 0.0;
  double variance = 0.0;
  double nugget = 0.0;
  Eigen::LLT<Matrix> chol;
};

LikelihoodEval concentrated_likelihood(const Matrix& x, const Vector& y, const Vector& theta) {
  LikelihoodEval out;
  const int k = static_cast<int>(x.rows());
  for (double nugget = kNuggetFloor; nugget <= kNuggetCeil * 1.0001; nugget *= 100.0) {
    Matrix r = correlation_matrix(x, theta, nugget);
    Eigen::LLT<Matrix> chol(r);
    if (chol.info() != Eigen::Success) continue;

    const Vector ones = Vector::Ones(k);
    const Vector rinv_y = chol.solve(y);
    const Vector rinv_1 = chol.solve(ones);
    const double denom = ones.dot(rinv_1);
    if (!(denom > 0.0)) continue;
    const double mu = ones.dot(rinv_y) / denom;
    const Vector resid = y - mu * ones;
    const double sigma2 = std::max(resid.dot(chol.solve(resid)) / k, 0.0);

    double log_det = 0.0;
    for (int i = 0; i < k; ++i) log_det += 2.0 * std::log(chol.matrixLLT()(i, i));

    out.ok = true;
    out.mean = mu;
    out.variance = sigma2;
    out.nugget = nugget;
    out.chol = std::move(chol);
    out.log_likelihood = sigma2 > 0.0
                             ? -0.5 * k * std::log(sigma2) - 0.5 * log_det
                             : std::numeric_limits<double>::infinity();
    return out;
  }
  return out;
}

}  // namespace

void Design::append(const Vector& x, double y) {
  const int k = size();
  Matrix np(k + 1, x.size());
  if (k > 0) np.topRows(k) = points;
  np.row(k) = x.transpose();
  points = std::move(np);
  Vector nv(k + 1);
  if (k > 0) nv.head(k) = values;
  nv[k] = y;
  values = std::move(nv);
}

void Design::validate() const {
  if (size() < 1 || dim() < 1) throw ConfigError("design: empty");
  if (values.size() != size()) throw ConfigError("design: points/values size mismatch");
  if (!values.allFinite() || !points.allFinite()) throw ConfigError("design: non-finite entries");
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      if ((points.row(i) - points.row(j)).cwiseAbs().maxCoeff() < 1e-10)
        throw ConfigError("design: duplicate points");
    }
  }
}

Vector KrigingModel::best_point() const {
  int idx = 0;
  values.minCoeff(&idx);
  return points.row(idx);
}

KrigingModel kriging_fit(const Design& design, std::uint64_t seed, const Vector* theta_hint) {
  design.validate();
  const int k = design.size();
  const int d = design.dim();
  if (k < d + 1) throw ConfigError("kriging_fit: needs at least d + 1 points");

  KrigingModel model;
  model.points = design.points;
  model.values = design.values;
  model.normalized = normalize_points(design.points, model.scale_offset, model.scale_range);

  const double spread = design.values.maxCoeff() - design.values.minCoeff();
  if (spread <= 0.0) {
    // All responses equal: the predictor is the constant.
    model.constant = true;
    model.process_mean = design.values[0];
    model.process_variance = 0.0;
    model.theta = Vector::Ones(d);
    return model;
  }

  auto negative_likelihood = [&](const Vector& log_theta) {
    Vector t(d);
    for (int j = 0; j < d; ++j) {
      const double clipped = std::clamp(log_theta[j], kLogThetaMin, kLogThetaMax);
      t[j] = std::pow(10.0, clipped);
    }
    const LikelihoodEval eval = concentrated_likelihood(model.normalized, design.values, t);
    return eval.ok ? -eval.log_likelihood : 1e300;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(kLogThetaMin + 0.5, kLogThetaMax - 0.5);
  std::vector<Vector> starts;
  if (theta_hint && theta_hint->size() == d && (theta_hint->array() > 0.0).all()) {
    starts.push_back(theta_hint->array().log10().matrix());
  }
  starts.push_back(Vector::Zero(d));  // theta = 1
  {
    Vector r(d);
    for (int j = 0; j < d; ++j) r[j] = uni(rng);
    starts.push_back(r);
  }
  if (!theta_hint) starts.push_back(Vector::Constant(d, 1.0));

  NelderMeadOptions nm;
  nm.max_iterations = 60 + 18 * d;
  nm.f_tolerance = 1e-7;
  nm.x_tolerance = 1e-6;

  Vector best_log_theta = starts[0];
  double best_value = negative_likelihood(best_log_theta);
  for (const Vector& s : starts) {
    const NelderMeadResult res = nelder_mead(negative_likelihood, s, Vector::Constant(d, 0.6), nm);
    if (res.value < best_value) {
      best_value = res.value;
      best_log_theta = res.x;
    }
  }
  if (best_value >= 1e300)
    throw NumericalError("kriging_fit: correlation matrix irreparably ill-conditioned");

  model.theta.resize(d);
  for (int j = 0; j < d; ++j)
    model.theta[j] = std::pow(10.0, std::clamp(best_log_theta[j], kLogThetaMin, kLogThetaMax));

  LikelihoodEval eval = concentrated_likelihood(model.normalized, design.values, model.theta);
  if (!eval.ok) throw NumericalError("kriging_fit: factorization failed at chosen hyperparameters");
  model.process_mean = eval.mean;
  model.process_variance = eval.variance;
  model.nugget = eval.nugget;
  model.correlation_chol = std::move(eval.chol);

  const Vector ones = Vector::Ones(k);
  model.alpha = model.correlation_chol.solve(design.values - model.process_mean * ones);
  model.rinv_ones = model.correlation_chol.solve(ones);
  model.ones_rinv_ones = ones.dot(model.rinv_ones);
  return model;
}

Prediction predict(const KrigingModel& model, const Vector& x) {
  const int d = static_cast<int>(model.points.cols());
  if (x.size() != d) throw ConfigError("predict: dimension mismatch");

  Prediction out;
  for (int j = 0; j < d; ++j) {
    if (x[j] < model.points.col(j).minCoeff() || x[j] > model.points.col(j).maxCoeff())
      out.extrapolated = true;
  }

  if (model.constant) {
    out.mean = model.process_mean;
    out.sd = 0.0;
    return out;
  }

  Vector xn(d);
  for (int j = 0; j < d; ++j) xn[j] = (x[j] - model.scale_offset[j]) / model.scale_range[j];

  const int k = static_cast<int>(model.points.rows());
  Vector r(k);
  for (int i = 0; i < k; ++i) {
    const Vector diff = model.normalized.row(i).transpose() - xn;
    r[i] = std::exp(-(model.theta.array() * diff.array().square()).sum());
  }

  out.mean = model.process_mean + r.dot(model.alpha);
  const Vector rinv_r = model.correlation_chol.solve(r);
  const double u = 1.0 - model.rinv_ones.dot(r);
  double var = model.process_variance *
               (1.0 + model.nugget - r.dot(rinv_r) + u * u / model.ones_rinv_ones);
  out.sd = std::sqrt(std::max(var, 0.0));
  return out;
}

double expected_improvement(double mean, double sd, double y_min) {
  if (sd <= 0.0) return std::max(y_min - mean, 0.0);
  const double z = (y_min - mean) / sd;
  const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi);
  return (y_min - mean) * cdf + sd * pdf;
}

double expected_improvement(const KrigingModel& model, const Vector& x, double y_min) {
  const Prediction p = predict(model, x);
  return expected_improvement(p.mean, p.sd, y_min);
}

}  // namespace femu

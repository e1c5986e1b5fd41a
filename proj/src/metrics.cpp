#include "femu/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace femu {

Matrix ExperimentalDataset::shape_matrix() const {
  Matrix m(sensor_layout.size(), modes.size());
  for (int j = 0; j < static_cast<int>(modes.size()); ++j) m.col(j) = modes[j].shape;
  return m;
}

Vector ExperimentalDataset::frequency_vector() const {
  Vector f(modes.size());
  for (int j = 0; j < static_cast<int>(modes.size()); ++j) f[j] = modes[j].frequency_hz;
  return f;
}

void ExperimentalDataset::validate() const {
  if (sensor_layout.empty()) throw ConfigError("dataset " + specimen + ": no sensors");
  if (modes.empty()) throw ConfigError("dataset " + specimen + ": no modes");
  double prev = 0.0;
  for (const ExperimentalMode& m : modes) {
    if (!(m.frequency_hz > prev))
      throw ConfigError("dataset " + specimen + ": frequencies must be ascending and positive");
    prev = m.frequency_hz;
    if (m.shape.size() != static_cast<Eigen::Index>(sensor_layout.size()))
      throw ConfigError("dataset " + specimen + ": shape length differs from sensor layout");
    if (!(m.damping_ratio > 0.0 && m.damping_ratio < 1.0))
      throw ConfigError("dataset " + specimen + ": damping ratios must be in (0, 1)");
  }
}

double mac(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ConfigError("mac: length mismatch");
  if (a.size() < 2) throw ConfigError("mac: vectors must have at least two entries");
  const double aa = a.squaredNorm();
  const double bb = b.squaredNorm();
  if (aa == 0.0 || bb == 0.0) throw ConfigError("mac: zero vector");
  const double ab = a.dot(b);
  return (ab * ab) / (aa * bb);
}

Vector realize_complex_shape(const std::vector<std::complex<double>>& shape) {
  // The real-part norm is maximized at half the phase of sum(v_k^2).
  std::complex<double> s(0.0, 0.0);
  for (const auto& v : shape) s += v * v;
  const double psi = 0.5 * std::arg(s);
  Vector out(shape.size());
  const std::complex<double> rot = std::polar(1.0, -psi);
  for (int i = 0; i < static_cast<int>(shape.size()); ++i) out[i] = (shape[i] * rot).real();
  return out;
}

ModePairing pair_modes(const Matrix& exp_shapes, const Matrix& num_shapes, double floor) {
  const int ne = static_cast<int>(exp_shapes.cols());
  const int nn = static_cast<int>(num_shapes.cols());
  if (ne == 0 || nn == 0) throw ConfigError("pair_modes: needs at least one mode per side");

  Matrix macs(ne, nn);
  for (int i = 0; i < ne; ++i)
    for (int j = 0; j < nn; ++j) macs(i, j) = mac(exp_shapes.col(i), num_shapes.col(j));

  std::vector<char> exp_used(ne, 0), num_used(nn, 0);
  ModePairing out;
  while (true) {
    int bi = -1, bj = -1;
    double best = floor;
    for (int i = 0; i < ne; ++i) {
      if (exp_used[i]) continue;
      for (int j = 0; j < nn; ++j) {
        if (num_used[j]) continue;
        if (macs(i, j) > best) {
          best = macs(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) break;
    exp_used[bi] = 1;
    num_used[bj] = 1;
    out.pairs.push_back({bi, bj, best});
  }
  if (out.pairs.empty()) throw NumericalError("pair_modes: no pair above the MAC floor");

  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const ModePair& a, const ModePair& b) { return a.exp_index < b.exp_index; });
  for (int i = 0; i < ne; ++i)
    if (!exp_used[i]) out.unmatched_exp.push_back(i);
  for (int j = 0; j < nn; ++j)
    if (!num_used[j]) out.unmatched_num.push_back(j);
  return out;
}

ModePairing pair_modes(const ExperimentalDataset& exp, const Matrix& num_shapes, double floor) {
  return pair_modes(exp.shape_matrix(), num_shapes, floor);
}

double mtmac(const ModePairing& pairing, const Vector& exp_freqs, const Vector& num_freqs) {
  if (pairing.pairs.empty()) throw ConfigError("mtmac: empty pairing");
  double product = 1.0;
  for (const ModePair& p : pairing.pairs) {
    const double fe = exp_freqs[p.exp_index];
    const double fn = num_freqs[p.num_index];
    const double rel = std::abs(fn - fe) / std::abs(fn + fe);
    product *= p.mac_value / (1.0 + rel);
  }
  return 1.0 - product;
}

}  // namespace femu

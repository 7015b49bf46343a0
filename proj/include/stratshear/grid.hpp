// Truncated eta-grid at a fixed x-wavenumber, and fields living on it.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <string>

namespace stratshear {

using Complex = std::complex<double>;

/// Complex values over the eta-grid of one k-channel (Theta_k, Q_k, Z1, ...).
using SpectralField = Eigen::VectorXcd;

/// Uniform grid eta_j = -eta_max + (j + 1/2) deta, j = 0..N-1, symmetric about 0.
///
/// Differences eta_i - eta_j are integer multiples of deta, so convolution
/// kernels are sampled on the lag grid m deta, |m| <= N - 1.
/// A probe grid holds explicitly chosen points; it supports the pointwise
/// (Couette) machinery only.
class FrequencyGrid {
 public:
  FrequencyGrid(int k, double eta_max, int N);

  /// Non-uniform probe grid at the given eta values (no convolutions).
  static FrequencyGrid probe(int k, const Eigen::VectorXd& etas);

  int k() const { return k_; }
  double eta_max() const { return eta_max_; }
  int size() const { return static_cast<int>(etas_.size()); }
  double deta() const { return deta_; }
  bool uniform() const { return uniform_; }
  double eta(int j) const { return etas_[j]; }
  const Eigen::VectorXd& etas() const { return etas_; }

  /// Quadrature weights for integrals over eta (midpoint rule on the uniform
  /// grid, unit weights on a probe grid).
  double quadrature_weight() const { return uniform_ ? deta_ : 1.0; }

 private:
  FrequencyGrid() = default;
  int k_ = 1;
  double eta_max_ = 0.0;
  double deta_ = 0.0;
  bool uniform_ = true;
  Eigen::VectorXd etas_;
};

/// Throws std::runtime_error naming `what` if any entry is NaN or infinite.
void require_finite(const SpectralField& u, const std::string& what);

/// sqrt(sum_j w |u_j|^2 <(k, eta_j)>^{2s}) with the grid quadrature weight.
double weighted_norm(const FrequencyGrid& grid, const SpectralField& u, double s = 0.0);

/// Physical L^2(Y) norm via Plancherel: sqrt((1/2pi) int |u|^2 d eta).
double l2_norm(const FrequencyGrid& grid, const SpectralField& u);

/// Samples f(eta) on the grid.
template <typename F>
SpectralField sample_field(const FrequencyGrid& grid, F&& f) {
  SpectralField u(grid.size());
  for (int j = 0; j < grid.size(); ++j) u[j] = f(grid.eta(j));
  return u;
}

}  // namespace stratshear

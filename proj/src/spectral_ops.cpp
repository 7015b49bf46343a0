#include "stratshear/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stratshear {

namespace {
constexpr Complex kI{0.0, 1.0};
}

void SolveStats::merge(const SolveStats& other) {
  solves += other.solves;
  max_iterations = std::max(max_iterations, other.max_iterations);
  max_residual = std::max(max_residual, other.max_residual);
  max_contraction = std::max(max_contraction, other.max_contraction);
}

Eigen::MatrixXcd convolution_matrix(const LagSamples& fhat, int N) {
  if (fhat.half_width() < N - 1) throw std::invalid_argument("convolution_matrix: lag samples too short for grid");
  const double scale = fhat.deta / (2.0 * std::numbers::pi);
  Eigen::MatrixXcd C(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) C(i, j) = scale * fhat.at_lag(i - j);
  return C;
}

SpectralOperators::SpectralOperators(FrequencyGrid grid, ProfileSpectrum spectrum, double beta, SolverOptions options)
    : grid_(std::move(grid)), spectrum_(std::move(spectrum)), beta_(beta), options_(options) {
  if (beta < 0) throw std::invalid_argument("SpectralOperators: beta must be nonnegative");
  if (options_.tol <= 0 || options_.max_iter < 1) throw std::invalid_argument("SpectralOperators: invalid solver options");
  if (!spectrum_.zero) {
    if (!grid_.uniform()) throw std::invalid_argument("SpectralOperators: convolutions need a uniform grid");
    const int N = grid_.size();
    conv_g_ = convolution_matrix(spectrum_.g_minus_one, N);
    conv_g2_ = convolution_matrix(spectrum_.g2_minus_one, N);
    conv_b_ = convolution_matrix(spectrum_.b, N);
    conv_b_minus_beta_g_ = conv_b_ - beta_ * conv_g_;
  }
}

Eigen::VectorXd SpectralOperators::sheared(double t) const {
  return grid_.etas().array() - grid_.k() * t;
}

Eigen::VectorXd SpectralOperators::symbol_p(double t) const {
  const double kk = static_cast<double>(grid_.k()) * grid_.k();
  return sheared(t).array().square() + kk;
}

Eigen::VectorXcd SpectralOperators::symbol_bl(double t) const {
  const Eigen::ArrayXd s = sheared(t).array();
  const Eigen::ArrayXd p = symbol_p(t).array();
  const Eigen::ArrayXd den = p.square() + beta_ * beta_ * s.square();
  Eigen::VectorXcd bl(grid_.size());
  bl.real() = p.square() / den;
  bl.imag() = -beta_ * p * s / den;
  return bl;
}

SpectralField SpectralOperators::apply_inv_laplace_L(double t, const SpectralField& u) const {
  return -(u.array() / symbol_p(t).array().cast<Complex>()).matrix();
}

SpectralField SpectralOperators::convolve_g_minus_one(const SpectralField& u) const {
  if (spectrum_.zero) return SpectralField::Zero(u.size());
  return conv_g_ * u;
}

SpectralField SpectralOperators::convolve_b_minus_beta_g(const SpectralField& u) const {
  if (spectrum_.zero) return SpectralField::Zero(u.size());
  return conv_b_minus_beta_g_ * u;
}

SpectralField SpectralOperators::apply_T_eps(double t, const SpectralField& u) const {
  if (spectrum_.zero) return SpectralField::Zero(u.size());
  const Eigen::ArrayXd s = sheared(t).array();
  const Eigen::ArrayXd p = symbol_p(t).array();
  const Eigen::ArrayXcd ug = u.array() * (-s.square() / p).cast<Complex>();
  const Eigen::ArrayXcd ub = u.array() * (kI * (s / p).cast<Complex>());
  return conv_g2_ * ug.matrix() + conv_b_ * ub.matrix();
}

template <typename Apply>
SpectralField SpectralOperators::fixed_point(const char* name, const SpectralField& f, Apply&& apply,
                                             SolveStats* stats) const {
  require_finite(f, name);
  const double fnorm = f.norm();
  SolveStats local;
  local.solves = 1;
  SpectralField u = f;
  if (fnorm == 0.0) {
    local.max_iterations = 1;
    if (stats) stats->merge(local);
    return u;
  }
  double previous = 0.0;
  for (int it = 1; it <= options_.max_iter; ++it) {
    SpectralField next = f + apply(u);
    const double residual = (next - u).norm() / fnorm;  // ||u - f - K u|| / ||f||
    if (!std::isfinite(residual)) throw NonConvergence(name, it, residual);
    if (it > 1 && previous > 0.0) local.max_contraction = std::max(local.max_contraction, residual / previous);
    if (residual <= options_.tol) {
      local.max_iterations = it;
      local.max_residual = residual;
      if (stats) stats->merge(local);
      return u;
    }
    previous = residual;
    u = std::move(next);
  }
  throw NonConvergence(name, options_.max_iter, previous);
}

SpectralField SpectralOperators::solve_TL(double t, const SpectralField& f, SolveStats* stats) const {
  return fixed_point("solve_TL", f, [&](const SpectralField& u) { return apply_T_eps(t, u); }, stats);
}

SpectralField SpectralOperators::apply_B_eps(double t, const SpectralField& u, SolveStats* stats) const {
  if (spectrum_.zero || beta_ == 0.0) return SpectralField::Zero(u.size());
  const Eigen::ArrayXd s = sheared(t).array();
  const Eigen::ArrayXd p = symbol_p(t).array();
  const Eigen::ArrayXcd d = -kI * (s / p).cast<Complex>();
  // T_eps T_L u = T_L u - u.
  const SpectralField v = solve_TL(t, u, stats) - u;
  const SpectralField du = (d * u.array()).matrix();
  const SpectralField dv = (d * v.array()).matrix();
  const SpectralField inner = conv_g_ * du + conv_g_ * dv + dv;
  return (beta_ * symbol_bl(t).array() * inner.array()).matrix();
}

SpectralField SpectralOperators::solve_TB(double t, const SpectralField& f, SolveStats* stats) const {
  return fixed_point("solve_TB", f, [&](const SpectralField& u) { return apply_B_eps(t, u, stats); }, stats);
}

SpectralField SpectralOperators::apply_Bt(double t, const SpectralField& u, SolveStats* stats) const {
  const SpectralField blu = (symbol_bl(t).array() * u.array()).matrix();
  SpectralField out = solve_TB(t, blu, stats);
  require_finite(out, "apply_Bt");
  return out;
}

SpectralField SpectralOperators::apply_inv_delta_t(double t, const SpectralField& u, SolveStats* stats) const {
  SpectralField out = apply_inv_laplace_L(t, solve_TL(t, u, stats));
  require_finite(out, "apply_inv_delta_t");
  return out;
}

SpectralField SpectralOperators::apply_inv_Bt(double t, const SpectralField& u, SolveStats* stats) const {
  const Eigen::ArrayXd s = sheared(t).array();
  // (d_Y - t d_X) Delta_t^{-1} u has symbol i (eta - kt) applied to Delta_t^{-1} u.
  const SpectralField w = (kI * s.cast<Complex>() * apply_inv_delta_t(t, u, stats).array()).matrix();
  return u - beta_ * (w + convolve_g_minus_one(w));
}

SpectralField SpectralOperators::apply_delta_t(double t, const SpectralField& u) const {
  const Eigen::ArrayXd s = sheared(t).array();
  const Eigen::ArrayXd p = symbol_p(t).array();
  SpectralField out = (-p.cast<Complex>() * u.array()).matrix();
  if (!spectrum_.zero) {
    out -= conv_g2_ * (s.square().cast<Complex>() * u.array()).matrix();
    out += conv_b_ * (kI * s.cast<Complex>() * u.array()).matrix();
  }
  return out;
}

}  // namespace stratshear

// Discrete Delta_L^{-1}, T_eps, B_eps and the Neumann resolvents T_L, T_B.
//
// Products with g - 1, g^2 - 1 and b become linear convolutions on the
// truncated eta-line: (f * u)_i = (deta / 2pi) sum_j fhat((i - j) deta) u_j,
// zero-extended beyond the grid. They are applied as dense Toeplitz
// matrix-vector products, O(N^2) each.
#pragma once

#include <Eigen/Dense>

#include "stratshear/errors.hpp"
#include "stratshear/grid.hpp"
#include "stratshear/shear.hpp"

namespace stratshear {

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 50;
};

/// Per-solve bookkeeping; accumulates across nested solves when shared.
struct SolveStats {
  int solves = 0;
  int max_iterations = 0;
  double max_residual = 0.0;       // relative, at exit
  double max_contraction = 0.0;    // max r_{n+1} / r_n seen

  void merge(const SolveStats& other);
};

/// Dense Toeplitz matrix of the convolution with `fhat` on an N-point grid.
Eigen::MatrixXcd convolution_matrix(const LagSamples& fhat, int N);

/// The time-dependent operators of one k-channel around a fixed profile.
/// Immutable after construction; every method is a pure function of (t, u).
class SpectralOperators {
 public:
  SpectralOperators(FrequencyGrid grid, ProfileSpectrum spectrum, double beta, SolverOptions options = {});

  const FrequencyGrid& grid() const { return grid_; }
  const ProfileSpectrum& spectrum() const { return spectrum_; }
  double beta() const { return beta_; }
  const SolverOptions& options() const { return options_; }

  /// -u / p.
  SpectralField apply_inv_laplace_L(double t, const SpectralField& u) const;
  /// (g^2 - 1) * [-(eta - kt)^2 / p u] + b * [i (eta - kt) / p u].
  SpectralField apply_T_eps(double t, const SpectralField& u) const;
  /// u = (I - T_eps)^{-1} f by fixed-point iteration u <- f + T_eps u.
  SpectralField solve_TL(double t, const SpectralField& f, SolveStats* stats = nullptr) const;
  /// B_L beta [(g-1) * D u + (g-1) * D T_eps T_L u + D T_eps T_L u], D = i(eta-kt)(-1/p).
  SpectralField apply_B_eps(double t, const SpectralField& u, SolveStats* stats = nullptr) const;
  /// u = (I - B_eps)^{-1} f.
  SpectralField solve_TB(double t, const SpectralField& f, SolveStats* stats = nullptr) const;

  /// B_t u = T_B (B_L u).
  SpectralField apply_Bt(double t, const SpectralField& u, SolveStats* stats = nullptr) const;
  /// Delta_t^{-1} u = Delta_L^{-1} T_L u.
  SpectralField apply_inv_delta_t(double t, const SpectralField& u, SolveStats* stats = nullptr) const;
  /// B_t^{-1} u = u - beta g (d_Y - t d_X) Delta_t^{-1} u.
  SpectralField apply_inv_Bt(double t, const SpectralField& u, SolveStats* stats = nullptr) const;
  /// Forward Delta_t u = -p u - (g^2 - 1) * [(eta-kt)^2 u] + b * [i (eta-kt) u].
  SpectralField apply_delta_t(double t, const SpectralField& u) const;

  /// (g - 1) * u.
  SpectralField convolve_g_minus_one(const SpectralField& u) const;
  /// (b - beta (g - 1)) * u.
  SpectralField convolve_b_minus_beta_g(const SpectralField& u) const;

  /// Pointwise multipliers at time t.
  Eigen::VectorXd symbol_p(double t) const;
  Eigen::VectorXd sheared(double t) const;
  Eigen::VectorXcd symbol_bl(double t) const;

 private:
  template <typename Apply>
  SpectralField fixed_point(const char* name, const SpectralField& f, Apply&& apply, SolveStats* stats) const;

  FrequencyGrid grid_;
  ProfileSpectrum spectrum_;
  double beta_;
  SolverOptions options_;
  Eigen::MatrixXcd conv_g_;
  Eigen::MatrixXcd conv_g2_;
  Eigen::MatrixXcd conv_b_;
  Eigen::MatrixXcd conv_b_minus_beta_g_;
};

}  // namespace stratshear

// Physical observables reconstructed from (Theta_k, Q_k), their norms, and
// power-law exponent fits.
#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stratshear/evolution.hpp"
#include "stratshear/spectral_ops.hpp"

namespace stratshear {

/// Omega = B_t Theta (pointwise B_L Theta around Couette).
SpectralField reconstruct_vorticity(const SpectralOperators& ops, double t, const SpectralField& theta,
                                    SolveStats* stats = nullptr);

/// Moving-frame velocity. Around Couette vx = i (eta - kt) Omega / p and
/// vy = -ik Omega / p; near Couette Delta_t^{-1} replaces Delta_L^{-1} and vx
/// picks up the factor g, applied as (.) + (g - 1) * (.).
std::pair<SpectralField, SpectralField> velocity_components(const SpectralOperators& ops, double t,
                                                            const SpectralField& omega, SolveStats* stats = nullptr);

/// L^2 norms at one snapshot.
struct ObservableRow {
  double t = 0.0;
  double q_norm = 0.0;
  double vx_norm = 0.0;
  double vy_norm = 0.0;
  double growth_norm = 0.0;  // ||Omega|| + ||sqrt(p) Q||
};

ObservableRow snapshot_norms(const SpectralOperators& ops, const RawState& state, SolveStats* stats = nullptr);

struct ObservableSeries {
  std::vector<double> times;
  std::vector<double> q_norm;
  std::vector<double> vx_norm;
  std::vector<double> vy_norm;
  std::vector<double> growth_norm;

  void push_back(const ObservableRow& row);
};

ObservableSeries series_norms(const SpectralOperators& ops, std::span<const RawState> history,
                              SolveStats* stats = nullptr);

class InsufficientWindow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  int samples = 0;
};

/// Least-squares slope of log(value) against log(t) on [t_lo, t_hi].
/// Throws InsufficientWindow with fewer than 16 samples in the window.
PowerLawFit fit_power_law(std::span<const double> times, std::span<const double> values, double t_lo, double t_hi);

/// Maximum of each consecutive block of width `block` (keeping the time at
/// which it occurs), for fitting the envelope of an oscillating series.
std::pair<std::vector<double>, std::vector<double>> block_max_envelope(std::span<const double> times,
                                                                       std::span<const double> values, double t_lo,
                                                                       double t_hi, double block);

/// fit_power_law applied to the block-maximum envelope (block width 5 by default).
/// The 16-sample floor applies to the raw samples in the window.
PowerLawFit fit_envelope_power_law(std::span<const double> times, std::span<const double> values, double t_lo,
                                   double t_hi, double block = 5.0);

}  // namespace stratshear

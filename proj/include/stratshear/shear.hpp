// Background shear profiles near Couette and their Fourier data.
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>

#include "stratshear/grid.hpp"

namespace stratshear {

enum class ProfileKind { couette, perturbed };

/// Raised when a grid cannot represent a profile's transform faithfully.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// U(y) = y + a phi((y - Y0) / sigma) with phi(x) = int_0^x exp(-s^2) ds,
/// so that U'(y) = 1 + (a / sigma) exp(-x^2). Monotone iff |a| / sigma < 1.
///
/// g(Y) = U'(U^{-1}(Y)) and b(Y) = U''(U^{-1}(Y)) are evaluated through a
/// safeguarded Newton inversion of U. Instances are immutable.
class ShearProfile {
 public:
  ProfileKind kind() const { return kind_; }
  bool is_couette() const { return kind_ == ProfileKind::couette || amplitude_ == 0.0; }
  double amplitude() const { return amplitude_; }
  double width() const { return width_; }
  double center() const { return center_; }

  double U(double y) const;
  double U_prime(double y) const;
  double U_second(double y) const;
  /// Solves U(y) = Y to 1e-12 in y.
  double U_inverse(double Y) const;
  double g(double Y) const;
  double b(double Y) const;

  /// Sobolev order s at which epsilon was measured.
  double sobolev_order() const { return s_; }
  /// ||g - 1||_{s+5} + ||b||_{s+4}.
  double epsilon() const { return epsilon_; }
  /// ||U' - 1||_{H^6} + ||U''||_{H^5}, the y-space smallness measure.
  double epsilon_U() const { return epsilon_U_; }

 private:
  friend ShearProfile build_profile(ProfileKind, double, double, double, double);
  ShearProfile() = default;

  ProfileKind kind_ = ProfileKind::couette;
  double amplitude_ = 0.0;
  double width_ = 1.0;
  double center_ = 0.0;
  double s_ = 0.0;
  double epsilon_ = 0.0;
  double epsilon_U_ = 0.0;
};

/// Builds a profile and measures its epsilon at Sobolev order s.
/// Throws std::invalid_argument if |a| sup|phi'| / sigma >= 1 (U not monotone).
ShearProfile build_profile(ProfileKind kind, double amplitude = 0.0, double width = 1.0,
                           double center = 0.0, double s = 0.0);

/// Symmetric frequency samples f(m deta), m = -M..M (index m + M).
struct LagSamples {
  double deta = 0.0;
  Eigen::VectorXcd values;

  int half_width() const { return static_cast<int>(values.size() / 2); }
  double eta(int index) const { return (index - half_width()) * deta; }
  Complex at_lag(int m) const { return values[m + half_width()]; }
};

/// Fourier data of g - 1, g^2 - 1 and b on the lag grid of a FrequencyGrid.
struct ProfileSpectrum {
  LagSamples g_minus_one;
  LagSamples g2_minus_one;
  LagSamples b;
  bool zero = true;  // all three transforms vanish identically (Couette)
};

/// Trapezoidal transform int f(Y) e^{-i eta Y} dY over [y_lo, y_hi] with
/// step h, evaluated at eta = m deta for |m| <= half_width.
LagSamples fourier_transform(const std::function<double(double)>& f, double y_lo, double y_hi,
                             double h, double deta, int half_width);

/// Samples the transforms on the lag grid of `grid`.
/// Requires sigma deta <= 1/4 and eta_max sigma >= 20 for perturbed profiles.
ProfileSpectrum sample_spectrum(const ShearProfile& profile, const FrequencyGrid& grid);

/// (int <eta>^{2s} |fhat|^2 d eta)^{1/2}, trapezoidal on the lag samples.
double sobolev_norm(const LagSamples& fhat, double s);

}  // namespace stratshear

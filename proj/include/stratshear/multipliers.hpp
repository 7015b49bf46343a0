// Time-dependent Fourier multipliers of the linearized Couette problem.
//
// Everything here is evaluated lazily at (t; k, eta): the symbols are cheap
// closed forms and time steps are not known ahead of time.
#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <stdexcept>

namespace stratshear {

/// A single Fourier mode: integer x-wavenumber k (nonzero) and Y-frequency eta.
template <std::floating_point Scalar = double>
struct Frequency {
  int k;
  Scalar eta;

  Frequency(int k_, Scalar eta_) : k(k_), eta(eta_) {
    if (k == 0) throw std::invalid_argument("Frequency: k must be nonzero (the k = 0 mode is conserved)");
  }
};

/// Slack applied to the analytic bound predicates to absorb rounding.
inline constexpr double kBoundSlack = 1.0 + 1e-12;

/// eta - k t, the sheared frequency.
template <std::floating_point Scalar>
constexpr Scalar sheared_eta(Scalar t, const Frequency<Scalar>& f) {
  return f.eta - static_cast<Scalar>(f.k) * t;
}

/// Symbol of -Delta_L: p = k^2 + (eta - k t)^2.
template <std::floating_point Scalar>
Scalar eval_p(Scalar t, const Frequency<Scalar>& f) {
  const Scalar kk = static_cast<Scalar>(f.k);
  const Scalar s = sheared_eta(t, f);
  return kk * kk + s * s;
}

/// Time derivative of p: -2k (eta - k t).
template <std::floating_point Scalar>
Scalar eval_p_prime(Scalar t, const Frequency<Scalar>& f) {
  return Scalar(-2) * static_cast<Scalar>(f.k) * sheared_eta(t, f);
}

/// Symbol of B_L = (1 + i beta (eta - k t) / p)^{-1}, written in split form
/// p^2 / (p^2 + beta^2 s^2) - i beta p s / (p^2 + beta^2 s^2) with s = eta - k t.
template <std::floating_point Scalar>
std::complex<Scalar> eval_bl(Scalar t, const Frequency<Scalar>& f, Scalar beta) {
  if (beta < 0) throw std::invalid_argument("eval_bl: beta must be nonnegative");
  const Scalar p = eval_p(t, f);
  const Scalar s = sheared_eta(t, f);
  const Scalar den = p * p + beta * beta * s * s;
  return {p * p / den, -beta * p * s / den};
}

/// Symbol of B_L^{-1} = 1 + i beta (eta - k t) / p.
template <std::floating_point Scalar>
std::complex<Scalar> eval_bl_inverse(Scalar t, const Frequency<Scalar>& f, Scalar beta) {
  return {Scalar(1), beta * sheared_eta(t, f) / eval_p(t, f)};
}

/// Left and right sides of the four pointwise B_L estimates, with verdicts.
template <std::floating_point Scalar>
struct BlBoundReport {
  Scalar abs_bl, abs_bl_bound;            // |B_L| <= 1 + beta
  Scalar abs_im, abs_im_bound;            // |Im B_L| <= beta / sqrt(p)
  Scalar abs_re_minus1, abs_re_minus1_bound;  // |Re(B_L - 1)| <= beta^2 / p
  Scalar abs_minus1, abs_minus1_bound;    // |B_L - 1| <= (beta + beta^2) / sqrt(p)

  bool modulus_ok() const { return abs_bl <= abs_bl_bound * kBoundSlack; }
  bool imag_ok() const { return abs_im <= abs_im_bound * kBoundSlack; }
  bool real_ok() const { return abs_re_minus1 <= abs_re_minus1_bound * kBoundSlack; }
  bool distance_ok() const { return abs_minus1 <= abs_minus1_bound * kBoundSlack; }
  bool all_ok() const { return modulus_ok() && imag_ok() && real_ok() && distance_ok(); }
};

template <std::floating_point Scalar>
BlBoundReport<Scalar> bl_bound_report(Scalar t, const Frequency<Scalar>& f, Scalar beta) {
  const auto bl = eval_bl(t, f, beta);
  const Scalar p = eval_p(t, f);
  const Scalar sqrt_p = std::sqrt(p);
  BlBoundReport<Scalar> r{};
  r.abs_bl = std::abs(bl);
  r.abs_bl_bound = 1 + beta;
  r.abs_im = std::abs(bl.imag());
  r.abs_im_bound = beta / sqrt_p;
  r.abs_re_minus1 = std::abs(bl.real() - 1);
  r.abs_re_minus1_bound = beta * beta / p;
  r.abs_minus1 = std::abs(bl - Scalar(1));
  r.abs_minus1_bound = (beta + beta * beta) / sqrt_p;
  return r;
}

/// Two-sided modulus bound 1/sqrt(1+beta^2) <= |B_L| <= 1, with slack.
template <std::floating_point Scalar>
bool bl_modulus_sandwich(Scalar t, const Frequency<Scalar>& f, Scalar beta) {
  const Scalar m = std::abs(eval_bl(t, f, beta));
  return m <= kBoundSlack && m * kBoundSlack >= 1 / std::sqrt(1 + beta * beta);
}

/// Closed form of int_0^T k^2 / p dt = arctan(eta/k) - arctan(eta/k - T).
template <std::floating_point Scalar>
Scalar integrated_inverse_p(Scalar T, const Frequency<Scalar>& f) {
  const Scalar c = f.eta / static_cast<Scalar>(f.k);
  return std::atan(c) - std::atan(c - T);
}

}  // namespace stratshear

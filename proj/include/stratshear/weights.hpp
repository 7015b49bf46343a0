// Ghost weights w, m1 and m = m1 w^delta, plus frequency-exchange ratios.
#pragma once

#include <cmath>
#include <concepts>
#include <numbers>
#include <stdexcept>

#include "stratshear/multipliers.hpp"

namespace stratshear {

/// Parameters of the weighted energy: delta = C0 * epsilon and the damping
/// constant C_beta = 256 sqrt(R) (2 sqrt(R) / (2 sqrt(R) - 1)) (1 + beta^2).
struct WeightSet {
  double beta = 0.0;
  double R = 1.0;
  double C0 = 64.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double C_beta = 0.0;
};

inline double damping_constant(double beta, double R) {
  if (!(R > 0.25)) throw std::invalid_argument("damping_constant: requires R > 1/4");
  const double sr = std::sqrt(R);
  return 256.0 * sr * (2.0 * sr / (2.0 * sr - 1.0)) * (1.0 + beta * beta);
}

inline WeightSet make_weight_set(double beta, double R, double C0, double epsilon) {
  if (beta < 0) throw std::invalid_argument("make_weight_set: beta must be nonnegative");
  if (C0 <= 0) throw std::invalid_argument("make_weight_set: C0 must be positive");
  if (epsilon < 0) throw std::invalid_argument("make_weight_set: epsilon must be nonnegative");
  return {beta, R, C0, epsilon, C0 * epsilon, damping_constant(beta, R)};
}

/// log w, where w solves w'/w = |p'|/(4p), w(0) = 1.
///
/// For eta/k >= 0 this is the familiar two-branch formula split at the
/// critical time t = eta/k. For eta/k < 0 the critical time lies in the past,
/// p grows from t = 0 on and the solution is (p / (k^2 + eta^2))^{1/4}.
template <std::floating_point Scalar>
Scalar log_w(Scalar t, const Frequency<Scalar>& f) {
  const Scalar kk = static_cast<Scalar>(f.k);
  const Scalar p0 = kk * kk + f.eta * f.eta;
  const Scalar p = eval_p(t, f);
  const Scalar t_crit = f.eta / kk;
  if (t_crit < 0) return Scalar(0.25) * (std::log(p) - std::log(p0));
  if (t < t_crit) return Scalar(0.25) * (std::log(p0) - std::log(p));
  return Scalar(0.25) * (std::log(p0) + std::log(p) - 4 * std::log(std::abs(kk)));
}

template <std::floating_point Scalar>
Scalar eval_w(Scalar t, const Frequency<Scalar>& f) {
  return std::exp(log_w(t, f));
}

/// log m1 for the closed form m1 = exp[C_beta (arctan(eta/k - t) - arctan(eta/k))].
/// Note d/dt log m1 = -C_beta k^2 / p: this m1 decreases in time.
template <std::floating_point Scalar>
Scalar log_m1(Scalar t, const Frequency<Scalar>& f, Scalar C_beta) {
  const Scalar c = f.eta / static_cast<Scalar>(f.k);
  return C_beta * (std::atan(c - t) - std::atan(c));
}

template <std::floating_point Scalar>
Scalar eval_m1(Scalar t, const Frequency<Scalar>& f, Scalar C_beta) {
  return std::exp(log_m1(t, f, C_beta));
}

/// log m = log m1 + delta log w (closed-form m1).
template <std::floating_point Scalar>
Scalar log_m(Scalar t, const Frequency<Scalar>& f, const WeightSet& ws) {
  return log_m1(t, f, static_cast<Scalar>(ws.C_beta)) + static_cast<Scalar>(ws.delta) * log_w(t, f);
}

template <std::floating_point Scalar>
Scalar eval_m(Scalar t, const Frequency<Scalar>& f, const WeightSet& ws) {
  return std::exp(log_m(t, f, ws));
}

/// |m1'/m1| = C_beta k^2 / p, the artificial damping rate of m1.
template <std::floating_point Scalar>
Scalar m1_rate(Scalar t, const Frequency<Scalar>& f, Scalar C_beta) {
  const Scalar kk = static_cast<Scalar>(f.k);
  return C_beta * kk * kk / eval_p(t, f);
}

/// w'/w = |p'| / (4p).
template <std::floating_point Scalar>
Scalar w_rate(Scalar t, const Frequency<Scalar>& f) {
  return std::abs(eval_p_prime(t, f)) / (4 * eval_p(t, f));
}

/// log of the growing weight used by the energy functional: its m1 factor is
/// 1/m1 (rate +C_beta k^2/p), so that m' > 0 and Z = m^{-1}(...) is damped.
template <std::floating_point Scalar>
Scalar log_energy_weight(Scalar t, const Frequency<Scalar>& f, const WeightSet& ws) {
  return -log_m1(t, f, static_cast<Scalar>(ws.C_beta)) + static_cast<Scalar>(ws.delta) * log_w(t, f);
}

/// Japanese bracket <x> = sqrt(1 + x^2).
template <std::floating_point Scalar>
Scalar bracket(Scalar x) {
  return std::sqrt(1 + x * x);
}

/// Left/right ratios of the three frequency-exchange inequalities at (t, k, eta, xi).
/// The m-ratio is returned as a logarithm: the weights span e^{+-pi C_beta}.
struct ExchangeRatios {
  double p_ratio;       // p^{-1}(eta) / (<eta-xi>^2 p^{-1}(xi))
  double p_prime_ratio; // (|p'|/p)(eta) / (<eta-xi>^2 (|p'|/p)(xi) + |k| <eta-xi>^3 p^{-1}(xi))
  double log_m_ratio;   // log[ m^{-1}(eta) / (<eta-xi>^delta m^{-1}(xi)) ]
};

inline ExchangeRatios check_exchange(double t, int k, double eta, double xi, const WeightSet& ws) {
  const Frequency<double> fe{k, eta}, fx{k, xi};
  const double br = bracket(eta - xi);
  const double pe = eval_p(t, fe), px = eval_p(t, fx);
  ExchangeRatios r{};
  r.p_ratio = (1.0 / pe) / (br * br / px);
  const double lhs = std::abs(eval_p_prime(t, fe)) / pe;
  const double rhs = br * br * std::abs(eval_p_prime(t, fx)) / px + std::abs(k) * br * br * br / px;
  r.p_prime_ratio = lhs / rhs;
  r.log_m_ratio = -log_m(t, fe, ws) - (ws.delta * std::log(br) - log_m(t, fx, ws));
  return r;
}

}  // namespace stratshear

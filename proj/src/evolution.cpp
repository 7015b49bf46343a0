#include "stratshear/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stratshear {

namespace {

constexpr Complex kI{0.0, 1.0};

struct Symbols {
  Eigen::ArrayXd s;  // eta - k t
  Eigen::ArrayXd p;
  Eigen::ArrayXcd bl;
};

Symbols symbols(const FrequencyGrid& grid, double t, double beta) {
  Symbols out;
  const double kk = static_cast<double>(grid.k()) * grid.k();
  out.s = grid.etas().array() - grid.k() * t;
  out.p = out.s.square() + kk;
  const Eigen::ArrayXd den = out.p.square() + beta * beta * out.s.square();
  out.bl.resize(grid.size());
  out.bl.real() = out.p.square() / den;
  out.bl.imag() = -beta * out.p * out.s / den;
  return out;
}

Eigen::ArrayXd log_weights(const FrequencyGrid& grid, double t, const WeightSet& ws) {
  Eigen::ArrayXd lw(grid.size());
  for (int j = 0; j < grid.size(); ++j) lw[j] = log_energy_weight(t, Frequency<double>{grid.k(), grid.eta(j)}, ws);
  return lw;
}

}  // namespace

RawState operator+(const RawState& a, const RawState& b) { return {a.t, a.theta + b.theta, a.q + b.q}; }

RawState operator*(double c, const RawState& a) { return {a.t, c * a.theta, c * a.q}; }

SymmetricState to_symmetric(const FrequencyGrid& grid, const RawState& raw, double R) {
  const Eigen::ArrayXd p = symbols(grid, raw.t, 0.0).p;
  const Eigen::ArrayXd p4 = p.pow(0.25);
  return {raw.t, (raw.theta.array() / p4.cast<Complex>()).matrix(),
          (kI * std::sqrt(R) * p4.cast<Complex>() * raw.q.array()).matrix()};
}

SymmetricState to_symmetric(const FrequencyGrid& grid, const RawState& raw, double R, const WeightSet& ws) {
  SymmetricState z = to_symmetric(grid, raw, R);
  const Eigen::ArrayXcd inv_m = (-log_weights(grid, raw.t, ws)).exp().cast<Complex>();
  z.z1.array() *= inv_m;
  z.z2.array() *= inv_m;
  return z;
}

RawState from_symmetric(const FrequencyGrid& grid, const SymmetricState& z, double R) {
  const Eigen::ArrayXd p4 = symbols(grid, z.t, 0.0).p.pow(0.25);
  return {z.t, (p4.cast<Complex>() * z.z1.array()).matrix(),
          (z.z2.array() / (kI * std::sqrt(R) * p4.cast<Complex>())).matrix()};
}

RawState from_symmetric(const FrequencyGrid& grid, const SymmetricState& z, double R, const WeightSet& ws) {
  RawState raw = from_symmetric(grid, z, R);
  const Eigen::ArrayXcd m = log_weights(grid, z.t, ws).exp().cast<Complex>();
  raw.theta.array() *= m;
  raw.q.array() *= m;
  return raw;
}

RawState rhs_couette(double t, const FrequencyGrid& grid, const RawState& state, double beta, double R) {
  const Symbols sym = symbols(grid, t, beta);
  const Complex ik = kI * static_cast<double>(grid.k());
  const Eigen::ArrayXcd bl_over_p = sym.bl / sym.p.cast<Complex>();
  const Eigen::ArrayXcd th = state.theta.array();
  RawState d;
  d.t = t;
  d.theta = (-ik * R * state.q.array() + ik * beta * bl_over_p * th).matrix();
  d.q = (-ik * bl_over_p * th).matrix();
  return d;
}

SymmetricState rhs_symmetric_couette(double t, const FrequencyGrid& grid, const SymmetricState& z, double beta,
                                     double R) {
  const Symbols sym = symbols(grid, t, beta);
  const double k = grid.k();
  const double sr = std::sqrt(R);
  const Eigen::ArrayXd pp = -2.0 * k * sym.s;  // p'
  const Eigen::ArrayXd diag = 0.25 * pp / sym.p;
  const Eigen::ArrayXd off = k * sr / sym.p.sqrt();
  const Eigen::ArrayXcd z1 = z.z1.array(), z2 = z.z2.array();
  SymmetricState d;
  d.t = t;
  d.z1 = (-diag.cast<Complex>() * z1 - off.cast<Complex>() * z2 +
          beta * kI * k * (sym.bl / sym.p.cast<Complex>()) * z1)
             .matrix();
  d.z2 = (off.cast<Complex>() * z1 + diag.cast<Complex>() * z2 + off.cast<Complex>() * (sym.bl - 1.0) * z1).matrix();
  return d;
}

RawState rhs_full(double t, const SpectralOperators& ops, const RawState& state, double R, SolveStats* stats) {
  const Complex ik = kI * static_cast<double>(ops.grid().k());
  const SpectralField psi = ops.apply_inv_delta_t(t, ops.apply_Bt(t, state.theta, stats), stats);
  RawState d;
  d.t = t;
  d.theta = -ik * R * state.q + ik * (ops.convolve_b_minus_beta_g(psi) - ops.beta() * psi);
  d.q = ik * psi;
  return d;
}

void check_step_size(double dt, int k, double R, double beta) {
  const double measure = dt * std::abs(k) * std::max(R, 1.0 + beta);
  if (!(dt > 0) || measure > 0.1 + 1e-12) {
    std::ostringstream msg;
    msg << "dt = " << dt << " violates dt |k| max(R, 1 + beta) <= 0.1 (got " << measure << ")";
    throw StepUnstable(msg.str());
  }
}

RawState rk4_step(const RhsFunction& rhs, const RawState& y, double dt) {
  const double t = y.t;
  const RawState k1 = rhs(t, y);
  const RawState k2 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k1);
  const RawState k3 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k2);
  const RawState k4 = rhs(t + dt, y + dt * k3);
  RawState next = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  next.t = t + dt;
  return next;
}

RawState evolve(const RawState& initial, const RhsFunction& rhs, const EvolveOptions& options,
                const StepObserver& observer) {
  if (!(options.dt > 0)) throw StepUnstable("evolve: dt must be positive");
  const long steps = std::lround((options.t_max - initial.t) / options.dt);
  const double norm0 = std::sqrt(initial.theta.squaredNorm() + initial.q.squaredNorm());
  const double limit = options.blowup_factor * norm0;
  RawState y = initial;
  if (observer) observer(y, 0);
  for (long n = 1; n <= steps; ++n) {
    y = rk4_step(rhs, y, options.dt);
    y.t = initial.t + n * options.dt;
    const double norm = std::sqrt(y.theta.squaredNorm() + y.q.squaredNorm());
    if (!std::isfinite(norm) || norm > limit) {
      std::ostringstream msg;
      msg << "evolve: field norm " << norm << " exceeds " << options.blowup_factor << "x its initial value at t = "
          << y.t;
      throw StepUnstable(msg.str());
    }
    if (observer) observer(y, n);
  }
  return y;
}

double coercivity_lower(double R) { return 0.5 * (1.0 - 1.0 / (2.0 * std::sqrt(R))); }

double coercivity_upper(double R) { return 0.5 * (1.0 + 1.0 / (2.0 * std::sqrt(R))); }

PointwiseEnergy pointwise_energy(const FrequencyGrid& grid, const SymmetricState& z, double R) {
  const Symbols sym = symbols(grid, z.t, 0.0);
  const double k = grid.k();
  const Eigen::ArrayXd pp = -2.0 * k * sym.s;
  const Eigen::ArrayXd mass = z.z1.array().abs2() + z.z2.array().abs2();
  const Eigen::ArrayXd mixed = ((pp / sym.p.sqrt()).cast<Complex>() * z.z1.array() * z.z2.array().conjugate()).real();
  PointwiseEnergy e;
  e.density = 0.5 * (mass + mixed / (2.0 * k * std::sqrt(R)));
  const double w = grid.quadrature_weight();
  e.integrated = w * e.density.sum();
  e.lower = w * coercivity_lower(R) * mass.sum();
  e.upper = w * coercivity_upper(R) * mass.sum();
  return e;
}

WeightedEnergy weighted_energy_Es(const FrequencyGrid& grid, const RawState& raw, const WeightSet& ws, double R,
                                  double s) {
  const Eigen::VectorXd density = pointwise_energy(grid, to_symmetric(grid, raw, R), R).density;
  const double kk = static_cast<double>(grid.k()) * grid.k();
  const Eigen::ArrayXd lw = log_weights(grid, raw.t, ws);
  // E_s = deta sum_j <(k, eta_j)>^{2s} m_j^{-2} e_j, summed relative to the largest term.
  Eigen::ArrayXd log_terms(grid.size());
  double top = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid.size(); ++j) {
    const double e = density[j];
    if (e == 0.0) {
      log_terms[j] = -std::numeric_limits<double>::infinity();
      continue;
    }
    log_terms[j] = s * std::log(1.0 + kk + grid.eta(j) * grid.eta(j)) - 2.0 * lw[j] + std::log(std::abs(e));
    top = std::max(top, log_terms[j]);
  }
  WeightedEnergy out;
  if (!std::isfinite(top)) return out;
  double sum = 0.0;
  for (int j = 0; j < grid.size(); ++j)
    if (density[j] != 0.0) sum += std::copysign(std::exp(log_terms[j] - top), density[j]);
  if (sum > 0.0) out.log_value = top + std::log(sum * grid.quadrature_weight());
  return out;
}

EnergyRecorder::EnergyRecorder(const FrequencyGrid& grid, double R, WeightSet ws, double s, double monotone_tol,
                               double mass_floor)
    : grid_(grid), R_(R), ws_(ws), s_(s), monotone_log_tol_(std::log1p(monotone_tol)), mass_floor_(mass_floor) {
  report_.ratio_max = -std::numeric_limits<double>::infinity();
  report_.ratio_min = std::numeric_limits<double>::infinity();
}

void EnergyRecorder::track_Es(const RawState& state) {
  const double log_es = weighted_energy_Es(grid_, state, ws_, R_, s_).log_value;
  if (last_log_Es_ && std::isfinite(*last_log_Es_)) {
    const double growth = log_es - *last_log_Es_;
    report_.Es_max_step_growth = std::max(report_.Es_max_step_growth, growth);
    if (growth > monotone_log_tol_) report_.Es_monotone = false;
  }
  last_log_Es_ = log_es;
}

void EnergyRecorder::record(const RawState& state) {
  const PointwiseEnergy e = pointwise_energy(grid_, to_symmetric(grid_, state, R_), R_);
  if (initial_density_.size() == 0) {
    initial_density_ = e.density;
    const double total = e.integrated;
    for (int j = 0; j < grid_.size(); ++j)
      if (total > 0.0 && e.density[j] * grid_.quadrature_weight() >= mass_floor_ * total) tracked_.push_back(j);
  }
  for (int j : tracked_) {
    const double ratio = e.density[j] / initial_density_[j];
    report_.ratio_max = std::max(report_.ratio_max, ratio);
    report_.ratio_min = std::min(report_.ratio_min, ratio);
  }
  // Coercivity holds only for R > 1/4; the envelope check is meaningful there.
  const double slack = 1e-12 * std::max(1.0, e.upper);
  if (R_ > 0.25 && (e.integrated < e.lower - slack || e.integrated > e.upper + slack))
    report_.coercive_envelope_ok = false;
  report_.times.push_back(state.t);
  report_.E.push_back(e.integrated);
  report_.E_lower.push_back(e.lower);
  report_.E_upper.push_back(e.upper);
  report_.log_Es.push_back(weighted_energy_Es(grid_, state, ws_, R_, s_).log_value);
}

}  // namespace stratshear

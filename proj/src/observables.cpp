#include "stratshear/observables.hpp"

#include <cmath>

namespace stratshear {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr int kMinWindowSamples = 16;

PowerLawFit regress(std::span<const double> ts, std::span<const double> vs) {
  const int n = static_cast<int>(ts.size());
  double sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    sx += std::log(ts[i]);
    sy += std::log(vs[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    const double dx = std::log(ts[i]) - mx, dy = std::log(vs[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  PowerLawFit fit;
  fit.samples = n;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

int count_window(std::span<const double> times, double t_lo, double t_hi) {
  int n = 0;
  for (double t : times)
    if (t >= t_lo && t <= t_hi) ++n;
  return n;
}

void check_window(std::span<const double> times, std::span<const double> values, double t_lo, double t_hi) {
  if (times.size() != values.size()) throw std::invalid_argument("power-law fit: times and values differ in length");
  if (!(t_lo >= 1.0) || !(t_hi > t_lo)) throw std::invalid_argument("power-law fit: need t_hi > t_lo >= 1");
  const int n = count_window(times, t_lo, t_hi);
  if (n < kMinWindowSamples)
    throw InsufficientWindow("power-law fit: " + std::to_string(n) + " samples in [" + std::to_string(t_lo) + ", " +
                             std::to_string(t_hi) + "], need at least 16");
}

}  // namespace

SpectralField reconstruct_vorticity(const SpectralOperators& ops, double t, const SpectralField& theta,
                                    SolveStats* stats) {
  return ops.apply_Bt(t, theta, stats);
}

std::pair<SpectralField, SpectralField> velocity_components(const SpectralOperators& ops, double t,
                                                            const SpectralField& omega, SolveStats* stats) {
  const Eigen::ArrayXd s = ops.sheared(t).array();
  const SpectralField psi = ops.apply_inv_delta_t(t, omega, stats);
  // V^x = -g (d_Y - t d_X) psi, V^y = d_X psi.
  const SpectralField vx1 = (-kI * s.cast<Complex>() * psi.array()).matrix();
  SpectralField vx = vx1 + ops.convolve_g_minus_one(vx1);
  SpectralField vy = kI * static_cast<double>(ops.grid().k()) * psi;
  return {std::move(vx), std::move(vy)};
}

ObservableRow snapshot_norms(const SpectralOperators& ops, const RawState& state, SolveStats* stats) {
  const FrequencyGrid& grid = ops.grid();
  const SpectralField omega = reconstruct_vorticity(ops, state.t, state.theta, stats);
  const auto [vx, vy] = velocity_components(ops, state.t, omega, stats);
  const SpectralField sqrt_p_q = (ops.symbol_p(state.t).array().sqrt().cast<Complex>() * state.q.array()).matrix();
  ObservableRow row;
  row.t = state.t;
  row.q_norm = l2_norm(grid, state.q);
  row.vx_norm = l2_norm(grid, vx);
  row.vy_norm = l2_norm(grid, vy);
  row.growth_norm = l2_norm(grid, omega) + l2_norm(grid, sqrt_p_q);
  return row;
}

void ObservableSeries::push_back(const ObservableRow& row) {
  times.push_back(row.t);
  q_norm.push_back(row.q_norm);
  vx_norm.push_back(row.vx_norm);
  vy_norm.push_back(row.vy_norm);
  growth_norm.push_back(row.growth_norm);
}

ObservableSeries series_norms(const SpectralOperators& ops, std::span<const RawState> history, SolveStats* stats) {
  ObservableSeries series;
  for (const RawState& state : history) series.push_back(snapshot_norms(ops, state, stats));
  return series;
}

PowerLawFit fit_power_law(std::span<const double> times, std::span<const double> values, double t_lo, double t_hi) {
  check_window(times, values, t_lo, t_hi);
  std::vector<double> ts, vs;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_lo || times[i] > t_hi) continue;
    if (!(values[i] > 0)) throw std::invalid_argument("fit_power_law: values must be positive on the window");
    ts.push_back(times[i]);
    vs.push_back(values[i]);
  }
  return regress(ts, vs);
}

std::pair<std::vector<double>, std::vector<double>> block_max_envelope(std::span<const double> times,
                                                                       std::span<const double> values, double t_lo,
                                                                       double t_hi, double block) {
  std::vector<double> ts, vs;
  const long blocks = static_cast<long>(std::floor((t_hi - t_lo) / block + 1e-9));
  for (long b = 0; b < blocks; ++b) {
    const double lo = t_lo + b * block;
    const double hi = b + 1 == blocks ? t_hi : lo + block;
    double best_t = 0, best_v = -1;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const bool inside = times[i] >= lo && (times[i] < hi || (b + 1 == blocks && times[i] <= hi));
      if (inside && values[i] > best_v) {
        best_v = values[i];
        best_t = times[i];
      }
    }
    if (best_v > 0) {
      ts.push_back(best_t);
      vs.push_back(best_v);
    }
  }
  return {ts, vs};
}

PowerLawFit fit_envelope_power_law(std::span<const double> times, std::span<const double> values, double t_lo,
                                   double t_hi, double block) {
  check_window(times, values, t_lo, t_hi);
  const auto [ts, vs] = block_max_envelope(times, values, t_lo, t_hi, block);
  if (ts.size() < 3) throw InsufficientWindow("fit_envelope_power_law: fewer than 3 envelope blocks");
  return regress(ts, vs);
}

}  // namespace stratshear

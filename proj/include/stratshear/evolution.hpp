// Time integration of one k-channel and the energy functionals E(t), E_s(t).
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "stratshear/grid.hpp"
#include "stratshear/spectral_ops.hpp"
#include "stratshear/weights.hpp"

namespace stratshear {

/// Theta_k and Q_k at time t.
struct RawState {
  double t = 0.0;
  SpectralField theta;
  SpectralField q;
};

RawState operator+(const RawState& a, const RawState& b);
RawState operator*(double c, const RawState& a);

/// Z1 = m^{-1} p^{-1/4} Theta, Z2 = m^{-1} p^{1/4} i sqrt(R) Q.
struct SymmetricState {
  double t = 0.0;
  SpectralField z1;
  SpectralField z2;
};

/// Unweighted symmetrization (m = 1).
SymmetricState to_symmetric(const FrequencyGrid& grid, const RawState& raw, double R);
/// Weighted symmetrization with the growing energy weight of `ws`.
SymmetricState to_symmetric(const FrequencyGrid& grid, const RawState& raw, double R, const WeightSet& ws);
RawState from_symmetric(const FrequencyGrid& grid, const SymmetricState& z, double R);
RawState from_symmetric(const FrequencyGrid& grid, const SymmetricState& z, double R, const WeightSet& ws);

/// Couette right-hand side, pointwise in eta:
///   dTheta = -ikR Q + ik beta (B_L / p) Theta,   dQ = -ik (B_L / p) Theta.
RawState rhs_couette(double t, const FrequencyGrid& grid, const RawState& state, double beta, double R);

/// Right-hand side of the symmetrized Couette system for (Z1, Z2) with m = 1.
SymmetricState rhs_symmetric_couette(double t, const FrequencyGrid& grid, const SymmetricState& z, double beta,
                                     double R);

/// Near-Couette right-hand side with psi = Delta_t^{-1} B_t Theta:
///   dTheta = -ikR Q + ik [(b - beta (g - 1)) * psi - beta psi],   dQ = ik psi.
RawState rhs_full(double t, const SpectralOperators& ops, const RawState& state, double R,
                  SolveStats* stats = nullptr);

using RhsFunction = std::function<RawState(double, const RawState&)>;

struct EvolveOptions {
  double t_max = 100.0;
  double dt = 0.01;
  double blowup_factor = 1e6;
};

/// Called after every step (and once at t = 0 with step 0).
using StepObserver = std::function<void(const RawState&, long step)>;

/// Throws StepUnstable unless dt |k| max(R, 1 + beta) <= 0.1.
void check_step_size(double dt, int k, double R, double beta);

/// One classical RK4 step.
RawState rk4_step(const RhsFunction& rhs, const RawState& y, double dt);

/// Integrates from initial.t to t_max with fixed dt; returns the final state.
/// Throws StepUnstable if a field norm exceeds blowup_factor times its
/// initial value or becomes non-finite.
RawState evolve(const RawState& initial, const RhsFunction& rhs, const EvolveOptions& options,
                const StepObserver& observer = {});

/// Per-eta Couette energy density and its integral.
struct PointwiseEnergy {
  Eigen::VectorXd density;  // E(t; eta_j)
  double integrated = 0.0;  // trapezoid over eta
  double lower = 0.0;       // (1/2)(1 - 1/(2 sqrt R)) (|Z1|^2 + |Z2|^2), integrated
  double upper = 0.0;       // (1/2)(1 + 1/(2 sqrt R)) (|Z1|^2 + |Z2|^2), integrated
};

/// Coercivity constants (1/2)(1 -+ 1/(2 sqrt R)).
double coercivity_lower(double R);
double coercivity_upper(double R);

/// E = (1/2)[|Z1|^2 + |Z2|^2 + (1/(2k sqrt R)) Re(p' p^{-1/2} Z1 conj(Z2))], per eta.
PointwiseEnergy pointwise_energy(const FrequencyGrid& grid, const SymmetricState& z, double R);

/// E_s with the growing weight m, kept in log form: the weights span
/// e^{+-pi C_beta}, far outside double range for realistic C_beta.
struct WeightedEnergy {
  double log_value = -std::numeric_limits<double>::infinity();
  double value() const { return std::exp(log_value); }
};

WeightedEnergy weighted_energy_Es(const FrequencyGrid& grid, const RawState& raw, const WeightSet& ws, double R,
                                  double s);

/// Energy time series and the diagnostics derived from it.
struct EnergyReport {
  std::vector<double> times;
  std::vector<double> E;
  std::vector<double> E_lower;
  std::vector<double> E_upper;
  std::vector<double> log_Es;
  double ratio_max = 1.0;  // max over t, eta of E(t; eta) / E(0; eta)
  double ratio_min = 1.0;
  bool coercive_envelope_ok = true;
  bool Es_monotone = true;
  double Es_max_step_growth = 0.0;  // max log E_s(t_{n+1}) - log E_s(t_n)
};

/// Accumulates E, its coercivity envelope, per-eta ratios, and E_s.
class EnergyRecorder {
 public:
  /// Points whose initial share of the energy is below `mass_floor` are
  /// excluded from the per-eta ratio extrema.
  EnergyRecorder(const FrequencyGrid& grid, double R, WeightSet ws, double s, double monotone_tol = 1e-6,
                 double mass_floor = 1e-8);

  /// Tracks E_s monotonicity (call every step).
  void track_Es(const RawState& state);
  /// Records a snapshot row and updates per-eta ratios.
  void record(const RawState& state);

  const EnergyReport& report() const { return report_; }

 private:
  const FrequencyGrid& grid_;
  double R_;
  WeightSet ws_;
  double s_;
  double monotone_log_tol_;
  double mass_floor_;
  Eigen::VectorXd initial_density_;
  std::vector<int> tracked_;
  std::optional<double> last_log_Es_;
  EnergyReport report_;
};

}  // namespace stratshear

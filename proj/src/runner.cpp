#include "stratshear/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include <nlohmann/json.hpp>

#include "stratshear/evolution.hpp"
#include "stratshear/observables.hpp"

namespace stratshear {

namespace {

using nlohmann::ordered_json;

constexpr const char* kFitNames[4] = {"exponent_q", "exponent_vx", "exponent_vy", "exponent_growth"};

struct RunResult {
  int k = 0;
  std::string csv;
  EnergyReport energy;
  std::optional<PowerLawFit> fits[4];
  std::string fit_error;
  SolveStats stats;
  int failure = kExitOk;
  std::string error;
  std::vector<Assertion> assertions;
};

ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

SpectralField gaussian(const FrequencyGrid& grid, const GaussianDatum& d) {
  return sample_field(grid, [&](double eta) {
    const double x = (eta - d.center) / d.sigma;
    return Complex(d.amplitude * std::exp(-0.5 * x * x), 0.0);
  });
}

// Share of |u|^2 outside |eta| <= eta_max / 2.
double outer_mass(const FrequencyGrid& grid, const SpectralField& u) {
  double inner = 0, outer = 0;
  for (int j = 0; j < grid.size(); ++j) (std::abs(grid.eta(j)) <= grid.eta_max() / 2 ? inner : outer) += std::norm(u[j]);
  return inner + outer > 0 ? outer / (inner + outer) : 0.0;
}

ordered_json stats_json(const SolveStats& s) {
  return {{"solves", s.solves},
          {"max_iterations", s.max_iterations},
          {"max_residual", number(s.max_residual)},
          {"max_contraction", number(s.max_contraction)}};
}

void run_one(const RunConfig& c, const ShearProfile& profile, const WeightSet& ws, int k, const RunOptions& opt,
             RunResult& out) {
  out.k = k;
  out.csv = csv_name(k);
  const FrequencyGrid grid(k, c.eta_max, c.N);
  const bool couette = c.mode == RunMode::couette;
  const SpectralOperators ops(grid, sample_spectrum(profile, grid), c.beta, c.solver);
  check_step_size(c.dt, k, c.R, c.beta);

  RawState y0{0.0, gaussian(grid, c.init_theta), gaussian(grid, c.init_q)};
  const double leak = std::max(outer_mass(grid, y0.theta), outer_mass(grid, y0.q));

  EnergyRecorder energy(grid, c.R, ws, c.s);
  ObservableSeries series;
  SolveStats stats;

  std::ofstream csv(std::filesystem::path(opt.output_dir) / out.csv, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write " + out.csv);
  csv << "t,E,E_lower,E_upper,q_norm,vx_norm,vy_norm,growth_norm,Es\n";

  RhsFunction rhs;
  if (couette)
    rhs = [&](double t, const RawState& s) { return rhs_couette(t, grid, s, c.beta, c.R); };
  else
    rhs = [&](double t, const RawState& s) { return rhs_full(t, ops, s, c.R, &stats); };

  auto observe = [&](const RawState& s, long step) {
    energy.track_Es(s);
    if (step % c.record_every != 0) return;
    energy.record(s);
    const ObservableRow row = snapshot_norms(ops, s, &stats);
    series.push_back(row);
    const EnergyReport& r = energy.report();
    csv << format17(s.t) << ',' << format17(r.E.back()) << ',' << format17(r.E_lower.back()) << ','
        << format17(r.E_upper.back()) << ',' << format17(row.q_norm) << ',' << format17(row.vx_norm) << ','
        << format17(row.vy_norm) << ',' << format17(row.growth_norm) << ',' << format17(std::exp(r.log_Es.back()))
        << '\n';
  };
  evolve(y0, rhs, EvolveOptions{c.t_max, c.dt}, observe);
  csv.close();

  out.energy = energy.report();
  out.stats = stats;
  const std::vector<double>* values[4] = {&series.q_norm, &series.vx_norm, &series.vy_norm, &series.growth_norm};
  for (int i = 0; i < 4; ++i) {
    try {
      out.fits[i] = fit_envelope_power_law(series.times, *values[i], c.fit_lo(), c.fit_hi());
    } catch (const std::exception& e) {
      out.fit_error = e.what();
    }
  }

  if (!opt.assert_acceptance) return;
  auto check = [&](std::string name, bool ok, std::string detail) {
    out.assertions.push_back({std::move(name), ok, std::move(detail)});
  };
  check("initial_data_interior", leak <= 1e-12, "outer mass fraction " + format17(leak));
  check("coercive_envelope", out.energy.coercive_envelope_ok, "E within its coercivity envelope at every record");
  check("Es_monotone", out.energy.Es_monotone,
        "max per-step log growth " + format17(out.energy.Es_max_step_growth));
  if (couette) {
    const double gamma = couette_energy_bound(c.R, c.beta);
    check("energy_ratio_bounds", out.energy.ratio_max <= gamma && out.energy.ratio_min >= 1.0 / gamma,
          "ratio in [" + format17(out.energy.ratio_min) + ", " + format17(out.energy.ratio_max) + "], Gamma " +
              format17(gamma));
  } else {
    check("neumann_contraction", stats.max_contraction < 0.5,
          "max contraction " + format17(stats.max_contraction));
  }
  for (int i = 0; i < 4; ++i) {
    const auto it = c.expect.find(kFitNames[i]);
    if (it == c.expect.end()) continue;
    if (!out.fits[i]) {
      check(kFitNames[i], false, "no fit: " + out.fit_error);
      continue;
    }
    const double x = out.fits[i]->exponent;
    const bool ok = (!it->second.min || x >= *it->second.min) && (!it->second.max || x <= *it->second.max);
    check(kFitNames[i], ok, "fitted " + format17(x));
  }
}

}  // namespace

std::string csv_name(int k) { return "run_k" + std::to_string(k) + ".csv"; }

double couette_energy_bound(double R, double beta) {
  return std::exp(4.0 * std::numbers::pi * (1.0 + beta) * (1.0 + beta) / (2.0 * std::sqrt(R) - 1.0));
}

std::string resolve_output_dir(const RunConfig& config, const std::string& cli_out) {
  if (!cli_out.empty()) return cli_out;
  if (const char* env = std::getenv("STRATSHEAR_OUTPUT_DIR"); env && *env) return env;
  return config.output_dir;
}

RunOutcome run(const RunConfig& c, const RunOptions& opt) {
  RunOutcome outcome;
  std::error_code ec;
  std::filesystem::create_directories(opt.output_dir, ec);
  if (ec) {
    outcome.exit_code = kExitConfig;
    outcome.messages.push_back("cannot create output directory '" + opt.output_dir + "': " + ec.message());
    return outcome;
  }

  std::optional<ShearProfile> built;
  WeightSet ws;
  try {
    const ProfileKind kind = c.mode == RunMode::couette ? ProfileKind::couette : c.profile_kind;
    built = build_profile(kind, c.profile_amplitude, c.profile_width, c.profile_center, c.s);
    const ShearProfile& profile = *built;
    if (c.R > 0.25) {
      ws = make_weight_set(c.beta, c.R, c.C0, profile.epsilon());
    } else {
      // No damping constant below the threshold: the weight reduces to w^delta.
      ws = WeightSet{c.beta, c.R, c.C0, profile.epsilon(), c.C0 * profile.epsilon(), 0.0};
    }
  } catch (const std::exception& e) {
    outcome.exit_code = kExitConfig;
    outcome.messages.push_back(std::string("profile: ") + e.what());
    return outcome;
  }
  const ShearProfile& profile = *built;

  std::vector<RunResult> results(c.k_list.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < results.size(); i = next++) {
      RunResult& r = results[i];
      r.k = c.k_list[i];
      try {
        run_one(c, profile, ws, c.k_list[i], opt, r);
      } catch (const NonConvergence& e) {
        r.failure = kExitSolver;
        r.error = e.what();
      } catch (const StepUnstable& e) {
        r.failure = kExitSolver;
        r.error = e.what();
      } catch (const ResolutionError& e) {
        r.failure = kExitConfig;
        r.error = e.what();
      } catch (const std::exception& e) {
        r.failure = kExitSolver;
        r.error = e.what();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(results.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  ordered_json summary;
  summary["mode"] = c.mode == RunMode::couette ? "couette" : "near_couette";
  summary["R"] = c.R;
  summary["beta"] = c.beta;
  summary["s"] = c.s;
  summary["k_list"] = c.k_list;
  summary["grid"] = {{"eta_max", c.eta_max}, {"N", c.N}};
  summary["time"] = {{"t_max", c.t_max}, {"dt", c.dt}, {"record_every", c.record_every}};
  summary["fit_window"] = {c.fit_lo(), c.fit_hi()};
  summary["epsilon_measured"] = profile.epsilon();
  summary["epsilon_U"] = profile.epsilon_U();
  summary["delta_used"] = ws.delta;
  summary["C_beta"] = c.R > 0.25 ? ordered_json(ws.C_beta) : ordered_json(nullptr);

  const RunResult& first = results.front();
  for (int i = 0; i < 4; ++i)
    summary[kFitNames[i]] = first.fits[i] ? number(first.fits[i]->exponent) : ordered_json(nullptr);
  double ratio_max = -INFINITY, ratio_min = INFINITY;
  bool monotone = true, coercive = true;
  SolveStats total;
  for (const RunResult& r : results) {
    if (r.failure != kExitOk) {
      monotone = false;
      continue;
    }
    ratio_max = std::max(ratio_max, r.energy.ratio_max);
    ratio_min = std::min(ratio_min, r.energy.ratio_min);
    monotone = monotone && r.energy.Es_monotone;
    coercive = coercive && r.energy.coercive_envelope_ok;
    total.merge(r.stats);
  }
  summary["energy_ratio_max"] = number(ratio_max);
  summary["energy_ratio_min"] = number(ratio_min);
  summary["Es_monotone"] = monotone;
  summary["coercive_envelope_ok"] = coercive;
  summary["solver"] = stats_json(total);

  int exit_code = kExitOk;
  bool all_passed = true;
  ordered_json runs = ordered_json::array();
  for (const RunResult& r : results) {
    ordered_json jr;
    jr["k"] = r.k;
    jr["csv"] = r.csv;
    jr["status"] = r.failure == kExitOk ? "ok" : (r.failure == kExitSolver ? "solver_failure" : "config_error");
    if (r.failure != kExitOk) {
      jr["error"] = r.error;
      outcome.messages.push_back("k = " + std::to_string(r.k) + ": " + r.error);
      exit_code = exit_code == kExitOk ? r.failure : std::min(exit_code, r.failure);
    } else {
      for (int i = 0; i < 4; ++i) {
        ordered_json f = nullptr;
        if (r.fits[i])
          f = {{"exponent", number(r.fits[i]->exponent)},
               {"prefactor", number(r.fits[i]->prefactor)},
               {"r_squared", number(r.fits[i]->r_squared)},
               {"envelope_points", r.fits[i]->samples}};
        jr[kFitNames[i]] = f;
      }
      if (!r.fit_error.empty()) jr["fit_error"] = r.fit_error;
      jr["energy_ratio_max"] = number(r.energy.ratio_max);
      jr["energy_ratio_min"] = number(r.energy.ratio_min);
      jr["Es_monotone"] = r.energy.Es_monotone;
      jr["Es_max_step_growth"] = number(r.energy.Es_max_step_growth);
      jr["log_Es_final"] = r.energy.log_Es.empty() ? ordered_json(nullptr) : number(r.energy.log_Es.back());
      jr["coercive_envelope_ok"] = r.energy.coercive_envelope_ok;
      jr["solver"] = stats_json(r.stats);
    }
    if (opt.assert_acceptance) {
      ordered_json ja = ordered_json::array();
      for (const Assertion& a : r.assertions) {
        ja.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
        if (!a.passed) {
          all_passed = false;
          outcome.messages.push_back("k = " + std::to_string(r.k) + ": assertion " + a.name + " failed (" +
                                     a.detail + ")");
        }
      }
      jr["assertions"] = ja;
    }
    runs.push_back(jr);
  }
  summary["runs"] = runs;
  if (opt.assert_acceptance) summary["assertions_passed"] = all_passed && exit_code == kExitOk;
  if (exit_code == kExitOk && opt.assert_acceptance && !all_passed) exit_code = kExitAssertion;
  summary["exit_code"] = exit_code;

  outcome.summary_path = (std::filesystem::path(opt.output_dir) / "summary.json").string();
  std::ofstream js(outcome.summary_path, std::ios::binary);
  js << summary.dump(2) << '\n';
  if (!js) {
    outcome.messages.push_back("cannot write " + outcome.summary_path);
    if (exit_code == kExitOk) exit_code = kExitConfig;
  }
  outcome.exit_code = exit_code;
  return outcome;
}

}  // namespace stratshear

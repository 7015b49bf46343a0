// Run configuration: flat `key = value` text with dotted sections.
//
//   mode = near_couette        # couette | near_couette
//   R = 1
//   beta = 1
//   k_list = 1, 2
//   grid.eta_max = 16
//   grid.N = 256
//   profile.amplitude = 0.004
//   expect.exponent_q.min = -0.5
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratshear/shear.hpp"
#include "stratshear/spectral_ops.hpp"

namespace stratshear {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string field = {})
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line),
        field_(std::move(field)) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

enum class RunMode { couette, near_couette };

/// Gaussian datum A exp(-(eta - c)^2 / (2 sigma^2)).
struct GaussianDatum {
  double amplitude = 1.0;
  double center = 0.0;
  double sigma = 1.0;
};

struct ExpectWindow {
  std::optional<double> min;
  std::optional<double> max;
};

struct RunConfig {
  RunMode mode = RunMode::couette;
  double R = 1.0;
  double beta = 0.0;
  std::vector<int> k_list;
  double s = 0.0;
  bool exploratory = false;

  double eta_max = 20.0;
  int N = 256;

  ProfileKind profile_kind = ProfileKind::couette;
  double profile_amplitude = 0.0;
  double profile_width = 2.0;
  double profile_center = 0.0;

  double t_max = 100.0;
  double dt = 0.01;
  int record_every = 10;

  double C0 = 64.0;
  SolverOptions solver;

  // exp(-eta^2) and exp(-(eta - 1)^2 / 2).
  GaussianDatum init_theta{1.0, 0.0, 0.70710678118654752};
  GaussianDatum init_q{1.0, 1.0, 1.0};

  std::optional<double> fit_t_lo;  // default t_max / 10
  std::optional<double> fit_t_hi;  // default t_max
  std::map<std::string, ExpectWindow> expect;  // keyed by summary field name

  std::string output_dir = "out";

  double fit_lo() const { return fit_t_lo.value_or(t_max / 10.0); }
  double fit_hi() const { return fit_t_hi.value_or(t_max); }
};

/// Parses config text; throws ConfigError naming the line and field.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Cross-field checks (k_list nonempty, R > 1/4 unless exploratory, ...).
/// `acceptance` additionally enforces the acceptance-run floors.
void validate_config(const RunConfig& config, bool acceptance = false);

}  // namespace stratshear

#pragma once

#include <stdexcept>
#include <string>

namespace stratshear {

/// A Neumann fixed-point solve failed to reach its residual tolerance: the
/// profile is outside the perturbative regime or the grid is under-resolved.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, int iterations, double residual)
      : std::runtime_error(what + ": no convergence after " + std::to_string(iterations) +
                           " iterations (relative residual " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// The time integration left its stability regime (dt too large, or a field
/// norm grew beyond the blow-up threshold).
class StepUnstable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stratshear

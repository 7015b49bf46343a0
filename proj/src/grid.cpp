#include "stratshear/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stratshear {

FrequencyGrid::FrequencyGrid(int k, double eta_max, int N) : k_(k), eta_max_(eta_max) {
  if (k == 0) throw std::invalid_argument("FrequencyGrid: k must be nonzero");
  if (!(eta_max > 0)) throw std::invalid_argument("FrequencyGrid: eta_max must be positive");
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("FrequencyGrid: N must be a positive even integer");
  deta_ = 2.0 * eta_max / N;
  etas_.resize(N);
  for (int j = 0; j < N; ++j) etas_[j] = -eta_max + (j + 0.5) * deta_;
}

FrequencyGrid FrequencyGrid::probe(int k, const Eigen::VectorXd& etas) {
  if (k == 0) throw std::invalid_argument("FrequencyGrid: k must be nonzero");
  if (etas.size() == 0) throw std::invalid_argument("FrequencyGrid: probe grid needs at least one point");
  FrequencyGrid g;
  g.k_ = k;
  g.uniform_ = false;
  g.etas_ = etas;
  g.eta_max_ = etas.cwiseAbs().maxCoeff();
  return g;
}

void require_finite(const SpectralField& u, const std::string& what) {
  if (!u.allFinite()) throw std::runtime_error(what + ": non-finite entry");
}

double weighted_norm(const FrequencyGrid& grid, const SpectralField& u, double s) {
  const double kk = static_cast<double>(grid.k()) * grid.k();
  double sum = 0.0;
  for (int j = 0; j < grid.size(); ++j) {
    const double w = s == 0.0 ? 1.0 : std::pow(1.0 + kk + grid.eta(j) * grid.eta(j), s);
    sum += w * std::norm(u[j]);
  }
  return std::sqrt(grid.quadrature_weight() * sum);
}

double l2_norm(const FrequencyGrid& grid, const SpectralField& u) {
  return weighted_norm(grid, u) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace stratshear

#include "stratshear/shear.hpp"

#include <cmath>
#include <numbers>

namespace stratshear {

namespace {

constexpr double kInverseTol = 1e-12;
// Half-width of the Y-window in units of sigma; the bump is below e^{-144} outside.
constexpr double kWindowSigmas = 12.0;
constexpr double kStepsPerSigma = 32.0;

double bump_primitive(double x) { return 0.5 * std::sqrt(std::numbers::pi) * std::erf(x); }

// y-window and step for a profile's Y-quadrature.
struct Window {
  double lo, hi, h;
};

Window profile_window(const ShearProfile& p) {
  const double sigma = p.width();
  const double shift = std::abs(p.amplitude()) * std::sqrt(std::numbers::pi) / 2.0;
  const double half = kWindowSigmas * sigma + shift;
  return {p.center() - half, p.center() + half, sigma / kStepsPerSigma};
}

}  // namespace

double ShearProfile::U(double y) const {
  if (is_couette()) return y;
  return y + amplitude_ * bump_primitive((y - center_) / width_);
}

double ShearProfile::U_prime(double y) const {
  if (is_couette()) return 1.0;
  const double x = (y - center_) / width_;
  return 1.0 + amplitude_ / width_ * std::exp(-x * x);
}

double ShearProfile::U_second(double y) const {
  if (is_couette()) return 0.0;
  const double x = (y - center_) / width_;
  return -2.0 * amplitude_ / (width_ * width_) * x * std::exp(-x * x);
}

double ShearProfile::U_inverse(double Y) const {
  if (is_couette()) return Y;
  // |U(y) - y| <= |a| sqrt(pi)/2 brackets the root.
  const double shift = std::abs(amplitude_) * std::sqrt(std::numbers::pi) / 2.0 + 1.0;
  double lo = Y - shift, hi = Y + shift;
  double y = Y;
  for (int it = 0; it < 200; ++it) {
    const double r = U(y) - Y;
    if (r > 0) hi = y; else lo = y;
    double next = y - r / U_prime(y);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - y) <= kInverseTol) return next;
    y = next;
  }
  return y;
}

double ShearProfile::g(double Y) const { return U_prime(U_inverse(Y)); }

double ShearProfile::b(double Y) const { return U_second(U_inverse(Y)); }

namespace {

// Trapezoidal transform of samples fv on the uniform nodes lo + i step.
LagSamples transform_nodes(double lo, double step, const Eigen::VectorXd& fv, double deta, int half_width) {
  const Eigen::Index n = fv.size() - 1;
  Eigen::VectorXd ys(n + 1), fw(n + 1);
  for (Eigen::Index i = 0; i <= n; ++i) {
    ys[i] = lo + i * step;
    fw[i] = fv[i] * step * ((i == 0 || i == n) ? 0.5 : 1.0);
  }
  LagSamples out;
  out.deta = deta;
  out.values.resize(2 * half_width + 1);
  for (int m = 0; m <= half_width; ++m) {
    const double eta = m * deta;
    Complex acc = 0.0;
    for (Eigen::Index i = 0; i <= n; ++i) acc += fw[i] * std::polar(1.0, -eta * ys[i]);
    out.values[half_width + m] = acc;
    out.values[half_width - m] = std::conj(acc);
  }
  return out;
}

}  // namespace

LagSamples fourier_transform(const std::function<double(double)>& f, double y_lo, double y_hi,
                             double h, double deta, int half_width) {
  const int n = static_cast<int>(std::ceil((y_hi - y_lo) / h));
  const double step = (y_hi - y_lo) / n;
  Eigen::VectorXd fv(n + 1);
  for (int i = 0; i <= n; ++i) fv[i] = f(y_lo + i * step);
  return transform_nodes(y_lo, step, fv, deta, half_width);
}

double sobolev_norm(const LagSamples& fhat, double s) {
  const int n = static_cast<int>(fhat.values.size());
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double eta = fhat.eta(i);
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    sum += w * std::pow(1.0 + eta * eta, s) * std::norm(fhat.values[i]);
  }
  return std::sqrt(sum * fhat.deta);
}

ShearProfile build_profile(ProfileKind kind, double amplitude, double width, double center, double s) {
  ShearProfile p;
  p.kind_ = kind;
  p.s_ = s;
  if (kind == ProfileKind::couette) return p;
  if (!(width > 0)) throw std::invalid_argument("build_profile: width sigma must be positive");
  // sup |phi'| = 1, so U' >= 1 - |a| / sigma.
  if (!(std::abs(amplitude) / width < 1.0))
    throw std::invalid_argument("build_profile: monotonicity constraint |a| sup|phi'| / sigma < 1 violated (|a|/sigma = " +
                                std::to_string(std::abs(amplitude) / width) + ")");
  p.amplitude_ = amplitude;
  p.width_ = width;
  p.center_ = center;
  if (p.is_couette()) return p;

  // Transforms decay like exp(-sigma^2 eta^2 / 4): resolve them on [-30/sigma, 30/sigma].
  const int half = 1200;
  const double deta = 30.0 / width / half;
  const Window win = profile_window(p);
  const auto g_hat = fourier_transform([&](double Y) { return p.g(Y) - 1.0; }, win.lo, win.hi, win.h, deta, half);
  const auto b_hat = fourier_transform([&](double Y) { return p.b(Y); }, win.lo, win.hi, win.h, deta, half);
  p.epsilon_ = sobolev_norm(g_hat, s + 5.0) + sobolev_norm(b_hat, s + 4.0);

  const auto u1_hat = fourier_transform([&](double y) { return p.U_prime(y) - 1.0; }, win.lo, win.hi, win.h, deta, half);
  const auto u2_hat = fourier_transform([&](double y) { return p.U_second(y); }, win.lo, win.hi, win.h, deta, half);
  p.epsilon_U_ = sobolev_norm(u1_hat, 6.0) + sobolev_norm(u2_hat, 5.0);
  return p;
}

ProfileSpectrum sample_spectrum(const ShearProfile& profile, const FrequencyGrid& grid) {
  if (!grid.uniform()) throw ResolutionError("sample_spectrum: convolution data needs a uniform grid");
  const int half = grid.size() - 1;
  ProfileSpectrum spec;
  auto zeros = [&] {
    LagSamples z;
    z.deta = grid.deta();
    z.values = Eigen::VectorXcd::Zero(2 * half + 1);
    return z;
  };
  if (profile.is_couette()) {
    spec.g_minus_one = spec.g2_minus_one = spec.b = zeros();
    return spec;
  }
  const double sigma = profile.width();
  if (sigma * grid.deta() > 0.25)
    throw ResolutionError("sample_spectrum: sigma * deta = " + std::to_string(sigma * grid.deta()) +
                          " exceeds 1/4; refine the eta-grid");
  if (grid.eta_max() * sigma < 20.0)
    throw ResolutionError("sample_spectrum: eta_max * sigma = " + std::to_string(grid.eta_max() * sigma) +
                          " is below 20; widen the eta-grid");

  const Window win = profile_window(profile);
  // Tabulate g on the Y-nodes once; the three transforms share them.
  const int n = static_cast<int>(std::ceil((win.hi - win.lo) / win.h));
  const double step = (win.hi - win.lo) / n;
  Eigen::VectorXd gv(n + 1), bv(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double y = profile.U_inverse(win.lo + i * step);
    gv[i] = profile.U_prime(y);
    bv[i] = profile.U_second(y);
  }
  spec.g_minus_one = transform_nodes(win.lo, step, gv.array() - 1.0, grid.deta(), half);
  spec.g2_minus_one = transform_nodes(win.lo, step, gv.array().square() - 1.0, grid.deta(), half);
  spec.b = transform_nodes(win.lo, step, bv, grid.deta(), half);
  spec.zero = false;
  return spec;
}

}  // namespace stratshear

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "stratshear/shear.hpp"

using namespace stratshear;

TEST(Profile, CouetteIsTrivial) {
  const auto p = build_profile(ProfileKind::couette);
  EXPECT_TRUE(p.is_couette());
  EXPECT_EQ(p.epsilon(), 0.0);
  for (double Y = -5; Y <= 5; Y += 0.5) {
    EXPECT_EQ(p.g(Y), 1.0);
    EXPECT_EQ(p.b(Y), 0.0);
  }
  const FrequencyGrid grid(1, 16.0, 128);
  const auto spec = sample_spectrum(p, grid);
  EXPECT_TRUE(spec.zero);
  EXPECT_EQ(spec.g_minus_one.values.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(spec.b.values.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Profile, ZeroAmplitudeMatchesCouette) {
  const auto p = build_profile(ProfileKind::perturbed, 0.0, 2.0, 0.0);
  EXPECT_TRUE(p.is_couette());
  EXPECT_EQ(p.epsilon(), 0.0);
}

TEST(Profile, RejectsNonMonotone) {
  EXPECT_THROW(build_profile(ProfileKind::perturbed, 2.0, 2.0, 0.0), std::invalid_argument);
  EXPECT_THROW(build_profile(ProfileKind::perturbed, -3.0, 2.0, 0.0), std::invalid_argument);
  EXPECT_THROW(build_profile(ProfileKind::perturbed, 0.1, 0.0, 0.0), std::invalid_argument);
}

TEST(Profile, InverseConsistency) {
  const auto p = build_profile(ProfileKind::perturbed, 0.5, 1.0, 0.3);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> Y(-8, 8);
  for (int i = 0; i < 1000; ++i) {
    const double y = Y(rng);
    EXPECT_NEAR(p.U_inverse(p.U(y)), y, 1e-11);
    EXPECT_NEAR(p.g(p.U(y)), p.U_prime(y), 1e-9);
    EXPECT_NEAR(p.b(p.U(y)), p.U_second(y), 1e-9);
  }
}

TEST(Profile, EpsilonLinearInAmplitude) {
  const double e1 = build_profile(ProfileKind::perturbed, 0.01, 2.0, 0.0).epsilon();
  const double e2 = build_profile(ProfileKind::perturbed, 0.02, 2.0, 0.0).epsilon();
  const double e4 = build_profile(ProfileKind::perturbed, 0.04, 2.0, 0.0).epsilon();
  EXPECT_GT(e1, 0.0);
  EXPECT_NEAR((e2 / 0.02) / (e1 / 0.01), 1.0, 0.05);
  EXPECT_NEAR((e4 / 0.04) / (e2 / 0.02), 1.0, 0.05);
  const auto p = build_profile(ProfileKind::perturbed, 0.05, 2.0, 0.0);
  EXPECT_GT(p.epsilon(), 0.0);
  EXPECT_GT(p.epsilon_U(), 0.0);
}

TEST(Transform, GaussianClosedForm) {
  // int exp(-Y^2 / (2 s^2)) e^{-i eta Y} dY = s sqrt(2 pi) exp(-s^2 eta^2 / 2).
  for (double s : {0.5, 1.0, 2.0}) {
    const auto f = fourier_transform([s](double y) { return std::exp(-y * y / (2 * s * s)); }, -15 * s, 15 * s,
                                     s / 32, 0.05, 200);
    double err = 0.0;
    for (int i = 0; i < f.values.size(); ++i) {
      const double eta = f.eta(i);
      const double exact = s * std::sqrt(2 * std::numbers::pi) * std::exp(-s * s * eta * eta / 2);
      err = std::max(err, std::abs(f.values[i] - exact));
    }
    EXPECT_LE(err, 1e-8) << "s = " << s;
  }
}

TEST(Transform, ShiftedGaussianPhase) {
  // A shift by Y0 multiplies the transform by e^{-i eta Y0}.
  const double y0 = 0.7;
  const auto f = fourier_transform([&](double y) { return std::exp(-(y - y0) * (y - y0)); }, -15, 15, 1.0 / 64,
                                   0.1, 100);
  for (int i = 0; i < f.values.size(); ++i) {
    const double eta = f.eta(i);
    const Complex exact = std::sqrt(std::numbers::pi) * std::exp(-eta * eta / 4) * std::polar(1.0, -eta * y0);
    EXPECT_LE(std::abs(f.values[i] - exact), 1e-8);
  }
}

TEST(Transform, SobolevNorm) {
  const double s = 1.0;
  const auto f = fourier_transform([s](double y) { return std::exp(-y * y / (2 * s * s)); }, -15, 15, 1.0 / 64,
                                   0.02, 1500);
  // sqrt(2 pi) ||f||_{L^2(Y)} with ||f||^2 = s sqrt(pi).
  EXPECT_NEAR(sobolev_norm(f, 0.0), std::sqrt(2 * std::numbers::pi * s * std::sqrt(std::numbers::pi)), 1e-6);
  EXPECT_LE(sobolev_norm(f, 0.0), sobolev_norm(f, 1.0));
  EXPECT_LE(sobolev_norm(f, 1.0), sobolev_norm(f, 3.5));
  LagSamples zero = f;
  zero.values.setZero();
  EXPECT_EQ(sobolev_norm(zero, 5.0), 0.0);
}

TEST(Spectrum, HermitianAndDecaying) {
  const auto p = build_profile(ProfileKind::perturbed, 0.05, 2.0, 0.4);
  const FrequencyGrid grid(1, 16.0, 256);
  const auto spec = sample_spectrum(p, grid);
  EXPECT_FALSE(spec.zero);
  for (const LagSamples* f : {&spec.g_minus_one, &spec.g2_minus_one, &spec.b}) {
    const int M = f->half_width();
    EXPECT_EQ(M, grid.size() - 1);
    for (int m = 0; m <= M; ++m) EXPECT_LE(std::abs(f->at_lag(-m) - std::conj(f->at_lag(m))), 1e-15);
    // Gaussian-class decay: far tail is negligible against the peak.
    EXPECT_LE(std::abs(f->at_lag(M)), 1e-12 * f->values.cwiseAbs().maxCoeff());
  }
}

TEST(Spectrum, ResolutionChecks) {
  const auto p = build_profile(ProfileKind::perturbed, 0.05, 2.0, 0.0);
  EXPECT_THROW(sample_spectrum(p, FrequencyGrid(1, 16.0, 64)), ResolutionError);   // sigma deta = 1
  EXPECT_THROW(sample_spectrum(p, FrequencyGrid(1, 8.0, 256)), ResolutionError);   // eta_max sigma = 16
  EXPECT_NO_THROW(sample_spectrum(p, FrequencyGrid(1, 16.0, 256)));
  Eigen::VectorXd etas(2);
  etas << 0.0, 1.0;
  EXPECT_THROW(sample_spectrum(p, FrequencyGrid::probe(1, etas)), ResolutionError);
}

TEST(Spectrum, MatchesDirectTransformOfG) {
  const auto p = build_profile(ProfileKind::perturbed, 0.1, 2.0, 0.0);
  const FrequencyGrid grid(1, 16.0, 256);
  const auto spec = sample_spectrum(p, grid);
  const auto direct = fourier_transform([&](double Y) { return p.g(Y) - 1.0; }, -30, 30, 1.0 / 64, grid.deta(), 40);
  for (int m = -40; m <= 40; ++m) EXPECT_LE(std::abs(spec.g_minus_one.at_lag(m) - direct.at_lag(m)), 1e-9);
}

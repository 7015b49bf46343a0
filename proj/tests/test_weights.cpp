#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "stratshear/weights.hpp"

using namespace stratshear;

namespace {

std::mt19937_64 rng(7);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

}  // namespace

TEST(DampingConstant, ClosedForm) {
  EXPECT_DOUBLE_EQ(damping_constant(1.0, 1.0), 1024.0);
  EXPECT_DOUBLE_EQ(damping_constant(0.0, 4.0), 256.0 * 2.0 * (4.0 / 3.0));
  EXPECT_THROW(damping_constant(0.0, 0.25), std::invalid_argument);
  const WeightSet ws = make_weight_set(1.0, 1.0, 64.0, 0.01);
  EXPECT_DOUBLE_EQ(ws.delta, 0.64);
  EXPECT_DOUBLE_EQ(ws.C_beta, 1024.0);
}

TEST(WeightW, InitialValueAndCriticalTime) {
  for (int i = 0; i < 500; ++i) {
    const Frequency<double> f{1 + int(uniform(0, 5)), uniform(-20, 20)};
    EXPECT_NEAR(eval_w(0.0, f), 1.0, 1e-15);
  }
  const Frequency<double> f{2, 5.0};
  const double tc = 2.5;
  const double expected = std::pow((4.0 + 25.0) / 4.0, 0.25);
  EXPECT_NEAR(eval_w(tc - 1e-12, f), expected, 1e-10);
  EXPECT_NEAR(eval_w(tc, f), expected, 1e-14);
}

TEST(WeightW, LogDerivativeMatchesRate) {
  const double h = 1e-5;
  for (int i = 0; i < 1000; ++i) {
    const Frequency<double> f{1 + int(uniform(0, 5)), uniform(-20, 20)};
    double t = uniform(h, 30);
    if (std::abs(t - f.eta / f.k) < 10 * h) t += 20 * h;
    const double fd = (log_w(t + h, f) - log_w(t - h, f)) / (2 * h);
    EXPECT_NEAR(fd, w_rate(t, f), 1e-5);
  }
}

TEST(WeightW, LowerEnvelopeAndGrowthBound) {
  for (int i = 0; i < 10000; ++i) {
    const Frequency<double> f{1 + int(uniform(0, 5)), uniform(-40, 40)};
    const double t = uniform(0, 100);
    const double p0 = double(f.k) * f.k + f.eta * f.eta;
    const double w = eval_w(t, f);
    ASSERT_GE(w * (1 + 1e-12), std::pow(p0 / eval_p(t, f), 0.25));
    ASSERT_LE(w, 2.0 * std::sqrt(bracket(t)) * std::sqrt(1.0 + p0));
  }
}

TEST(WeightM1, ClosedFormValues) {
  const double cb = damping_constant(1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Frequency<double> f{1 + int(uniform(0, 5)), uniform(-20, 20)};
    EXPECT_DOUBLE_EQ(log_m1(0.0, f, cb), 0.0);
    const double lm = log_m1(uniform(0, 1000), f, cb);
    EXPECT_LE(std::abs(lm), cb * std::numbers::pi);
  }
  // k = 1, eta = 0: m1 -> exp(-C_beta pi / 2).
  EXPECT_NEAR(log_m1(1e9, Frequency<double>{1, 0.0}, cb), -cb * std::numbers::pi / 2, 1e-3);
  EXPECT_NEAR(eval_m1(1e9, Frequency<double>{1, 0.0}, 2.0), std::exp(-std::numbers::pi), 1e-8);
}

TEST(WeightM1, LogDerivativeOfClosedForm) {
  const double cb = 3.0, h = 1e-5;
  for (int i = 0; i < 1000; ++i) {
    const Frequency<double> f{1 + int(uniform(0, 5)), uniform(-20, 20)};
    const double t = uniform(h, 30);
    const double fd = (log_m1(t + h, f, cb) - log_m1(t - h, f, cb)) / (2 * h);
    EXPECT_NEAR(fd, -m1_rate(t, f, cb), 1e-5);
  }
}

TEST(WeightM, ProductAndAdditivity) {
  WeightSet ws = make_weight_set(1.0, 1.0, 64.0, 0.01);
  ws.C_beta = 2.0;  // keeps m inside double range for the direct products
  const double h = 1e-5;
  for (int i = 0; i < 1000; ++i) {
    const Frequency<double> f{1 + int(uniform(0, 5)), uniform(-20, 20)};
    double t = uniform(h, 30);
    if (std::abs(t - f.eta / f.k) < 10 * h) t += 20 * h;
    EXPECT_DOUBLE_EQ(eval_m(0.0, f, ws), 1.0);
    EXPECT_NEAR(eval_m(t, f, ws), eval_m1(t, f, ws.C_beta) * std::pow(eval_w(t, f), ws.delta), 1e-12);
    const double fd = (log_m(t + h, f, ws) - log_m(t - h, f, ws)) / (2 * h);
    EXPECT_NEAR(fd, ws.delta * w_rate(t, f) - m1_rate(t, f, ws.C_beta), 1e-5);
  }
  WeightSet zero = ws;
  zero.delta = 0.0;
  const Frequency<double> f{1, 2.0};
  EXPECT_DOUBLE_EQ(eval_m(3.0, f, zero), eval_m1(3.0, f, zero.C_beta));
}

TEST(WeightM, EnergyWeightGrows) {
  const WeightSet ws = make_weight_set(1.0, 1.0, 64.0, 0.02);
  for (int i = 0; i < 1000; ++i) {
    const Frequency<double> f{1 + int(uniform(0, 5)), uniform(-20, 20)};
    const double t = uniform(0, 50);
    EXPECT_GE(log_energy_weight(t + 0.01, f, ws), log_energy_weight(t, f, ws));
  }
}

TEST(Exchange, TrivialCases) {
  const WeightSet ws = make_weight_set(1.0, 1.0, 64.0, 0.01);
  const auto same = check_exchange(3.0, 2, 1.5, 1.5, ws);
  EXPECT_DOUBLE_EQ(same.p_ratio, 1.0);
  EXPECT_NEAR(same.log_m_ratio, 0.0, 1e-12);
  // t = 0, k = 1, eta = 3, xi = 0: (1/10) / (10 * 1).
  EXPECT_NEAR(check_exchange(0.0, 1, 3.0, 0.0, ws).p_ratio, 0.01, 1e-15);
}

// Sampled suprema over t in [0, 50], k in 1..5, eta, xi in [-20, 20].
class ExchangeSampling : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    const WeightSet ws = make_weight_set(1.0, 1.0, 64.0, 0.05);
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> T(0, 50), E(-20, 20);
    std::uniform_int_distribution<int> K(1, 5);
    for (int i = 0; i < 100000; ++i) {
      const auto r = check_exchange(T(gen), K(gen), E(gen), E(gen), ws);
      sup_p = std::max(sup_p, r.p_ratio);
      sup_pp = std::max(sup_pp, r.p_prime_ratio);
      sup_log_m = std::max(sup_log_m, r.log_m_ratio);
    }
    C_beta = ws.C_beta;
  }
  static inline double sup_p = 0, sup_pp = 0, sup_log_m = -1e300, C_beta = 0;
};

TEST_F(ExchangeSampling, PeetreRatioWithinTwo) {
  EXPECT_TRUE(std::isfinite(sup_p));
  EXPECT_LE(sup_p, 2.0);
}

TEST_F(ExchangeSampling, DerivativeRatioWithinFour) {
  EXPECT_TRUE(std::isfinite(sup_pp));
  EXPECT_LE(sup_pp, 4.0);
}

TEST_F(ExchangeSampling, WeightRatioWithinArctanRange) {
  // Each arctan difference lies in (-pi, pi), so the m1 part is below e^{pi C_beta}.
  EXPECT_TRUE(std::isfinite(sup_log_m));
  EXPECT_LE(sup_log_m, std::numbers::pi * C_beta);
}

#include <gtest/gtest.h>

#include "stratshear/config.hpp"

using namespace stratshear;

TEST(Config, ParsesAllSections) {
  const RunConfig c = parse_config(R"(# sweep
mode = near_couette
R = 2
beta = 0.5
k_list = 1, -2, 3
s = 1
grid.eta_max = 16
grid.N = 256
profile.kind = perturbed
profile.amplitude = 0.01
profile.width = 2
profile.center = 0.5
time.t_max = 50   # short
time.dt = 0.005
time.record_every = 20
weights.C0 = 32
solver.tol = 1e-12
solver.max_iter = 80
init.theta.amplitude = 2
init.q.center = -1
fit.t_lo = 5
expect.exponent_q.min = -0.6
expect.exponent_q.max = -0.4
output.dir = out/run
)");
  EXPECT_EQ(c.mode, RunMode::near_couette);
  EXPECT_EQ(c.R, 2.0);
  EXPECT_EQ(c.k_list, (std::vector<int>{1, -2, 3}));
  EXPECT_EQ(c.N, 256);
  EXPECT_EQ(c.profile_kind, ProfileKind::perturbed);
  EXPECT_EQ(c.profile_center, 0.5);
  EXPECT_EQ(c.t_max, 50.0);
  EXPECT_EQ(c.record_every, 20);
  EXPECT_EQ(c.C0, 32.0);
  EXPECT_EQ(c.solver.tol, 1e-12);
  EXPECT_EQ(c.solver.max_iter, 80);
  EXPECT_EQ(c.init_theta.amplitude, 2.0);
  EXPECT_EQ(c.init_q.center, -1.0);
  EXPECT_EQ(c.fit_lo(), 5.0);
  EXPECT_EQ(c.fit_hi(), 50.0);
  EXPECT_EQ(*c.expect.at("exponent_q").min, -0.6);
  EXPECT_EQ(c.output_dir, "out/run");
  EXPECT_NO_THROW(validate_config(c, true));
}

TEST(Config, Defaults) {
  const RunConfig c = parse_config("k_list = 1\n");
  EXPECT_EQ(c.mode, RunMode::couette);
  EXPECT_EQ(c.C0, 64.0);
  EXPECT_EQ(c.solver.tol, 1e-10);
  EXPECT_EQ(c.solver.max_iter, 50);
  EXPECT_EQ(c.dt, 0.01);
  EXPECT_NEAR(c.init_theta.sigma, std::sqrt(0.5), 1e-15);
  EXPECT_EQ(c.init_q.center, 1.0);
  EXPECT_EQ(c.fit_lo(), 10.0);
}

TEST(Config, DiagnosticsNameLineAndField) {
  try {
    parse_config("R = 1\nbeta = abc\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.field(), "beta");
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  try {
    parse_config("\n\ngrid.Nx = 3\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.field(), "grid.Nx");
  }
  EXPECT_THROW(parse_config("R 1\n"), ConfigError);
  EXPECT_THROW(parse_config("R =\n"), ConfigError);
  EXPECT_THROW(parse_config("R = 1\nR = 2\n"), ConfigError);
  EXPECT_THROW(parse_config("mode = turbulent\n"), ConfigError);
  EXPECT_THROW(parse_config("grid.N = 12.5\n"), ConfigError);
  EXPECT_THROW(parse_config("expect.exponent_q.mid = 1\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.txt"), ConfigError);
}

TEST(Config, Validation) {
  EXPECT_THROW(validate_config(parse_config("R = 1\n")), ConfigError);  // empty k_list
  EXPECT_THROW(validate_config(parse_config("k_list = 0\n")), ConfigError);
  EXPECT_THROW(validate_config(parse_config("k_list = 1\nR = 0.25\n")), ConfigError);
  EXPECT_NO_THROW(validate_config(parse_config("k_list = 1\nR = 0.2\nexploratory = true\n")));
  EXPECT_THROW(validate_config(parse_config("k_list = 1\nR = 0.2\nexploratory = true\n"), true), ConfigError);
  EXPECT_THROW(validate_config(parse_config("k_list = 1\ngrid.N = 64\n"), true), ConfigError);
  EXPECT_NO_THROW(validate_config(parse_config("k_list = 1\ngrid.N = 64\n")));
  EXPECT_THROW(validate_config(parse_config("k_list = 1\nbeta = -1\n")), ConfigError);
  EXPECT_THROW(validate_config(parse_config("k_list = 1\ntime.dt = 0\n")), ConfigError);
  try {
    validate_config(parse_config("R = 1\n"));
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "k_list");
  }
}

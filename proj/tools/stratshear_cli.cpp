#include <iostream>

#include <CLI11.hpp>

#include "stratshear/config.hpp"
#include "stratshear/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Linearized stratified shear flow near Couette: per-k evolution, energies and decay fits"};
  std::string config_path, out_dir;
  bool assert_mode = false;
  int jobs = 1;
  long seed = 0;
  app.add_option("--config", config_path, "run configuration (key = value)")->required();
  app.add_option("--out", out_dir, "output directory (overrides STRATSHEAR_OUTPUT_DIR and output.dir)");
  app.add_flag("--assert", assert_mode, "enable acceptance assertions");
  app.add_option("--jobs", jobs, "parallel workers across k_list")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "reserved; the pipeline is deterministic");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : stratshear::kExitConfig;
  }

  stratshear::RunConfig config;
  try {
    config = stratshear::load_config(config_path);
    stratshear::validate_config(config, assert_mode);
  } catch (const stratshear::ConfigError& e) {
    std::cerr << "config error: " << config_path << ": " << e.what() << '\n';
    return stratshear::kExitConfig;
  }

  const stratshear::RunOptions options{stratshear::resolve_output_dir(config, out_dir), assert_mode, jobs};
  const stratshear::RunOutcome outcome = stratshear::run(config, options);
  for (const auto& m : outcome.messages) std::cerr << m << '\n';
  if (!outcome.summary_path.empty()) std::cout << "summary: " << outcome.summary_path << '\n';
  return outcome.exit_code;
}

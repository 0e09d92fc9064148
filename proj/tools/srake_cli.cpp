// Command-line front end: run a sweep, validate a config, or run the
// conventional <= GA <= exhaustive sandwich check on small instances.

#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "srake/config.hpp"
#include "srake/harness.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_path, std::optional<std::uint64_t> seed,
            std::optional<int> realizations, int jobs) {
  srake::ExperimentSpec spec = srake::load_spec(config_path);
  if (seed) spec.seed = *seed;
  if (realizations) spec.realizations = *realizations;
  spec.validate();

  const srake::SweepResult result = srake::run_sweep(spec, jobs);
  if (out_path.empty()) {
    srake::emit(result, std::cout);
  } else {
    srake::emit(result, std::filesystem::path(out_path));
    std::cerr << "wrote " << out_path << " (" << result.points.size() << " sweep points, " << std::fixed
              << std::setprecision(2) << result.elapsed_seconds << " s)\n";
  }
  return 0;
}

int cmd_validate(const std::string& config_path) {
  const srake::ExperimentSpec spec = srake::load_spec(config_path);
  std::cout << config_path << ": ok (" << spec.grid.size() << " sweep points, " << spec.realizations
            << " realizations)\n";
  return 0;
}

int cmd_oracle(const std::string& config_path, std::optional<std::uint64_t> seed, std::optional<int> realizations) {
  srake::ExperimentSpec spec = srake::load_spec(config_path);
  if (seed) spec.seed = *seed;
  if (realizations) spec.realizations = *realizations;
  spec.algorithms = {srake::Algorithm::conventional, srake::Algorithm::ga, srake::Algorithm::exhaustive};
  spec.ga.inject_conventional = true;
  spec.validate();

  for (std::size_t p = 0; p < spec.grid.size(); ++p) {
    const srake::SystemConfig cfg = spec.config_at(p);
    if (srake::binomial(cfg.num_paths, cfg.num_fingers) > spec.enumeration_cap) {
      std::cerr << "oracle: exhaustive search is infeasible at " << srake::to_string(spec.axis) << " = "
                << spec.grid[p] << "\n";
      return 2;
    }
  }

  int violations = 0;
  int checked = 0;
  for (std::size_t p = 0; p < spec.grid.size(); ++p) {
    for (int r = 0; r < spec.realizations; ++r) {
      const auto out = srake::run_realization(spec, p, static_cast<std::uint64_t>(r));
      const double conv = out.selections[0]->sinr;
      const double ga = out.selections[1]->sinr;
      const double opt = out.selections[2]->sinr;
      ++checked;
      if (!(conv <= ga && ga <= opt)) {
        ++violations;
        std::cerr << "violation at point " << p << ", realization " << r << ": conventional=" << conv
                  << " ga=" << ga << " exhaustive=" << opt << "\n";
      }
    }
  }
  std::cout << "oracle: " << checked << " realizations checked, " << violations << " violations\n";
  return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finger selection for MMSE selective-Rake receivers"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> realizations;
  int jobs = 1;

  auto* run = app.add_subcommand("run", "Run a Monte Carlo sweep and write the CSV table");
  run->add_option("config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_path, "CSV output path (stdout when omitted)");
  run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--realizations", realizations, "Override the realization count")->check(CLI::PositiveNumber);
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Parse and validate a config file");
  validate->add_option("config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);

  auto* oracle = app.add_subcommand("oracle", "Check conventional <= GA <= exhaustive on every realization");
  oracle->add_option("config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);
  oracle->add_option("--seed", seed, "Override the master seed");
  oracle->add_option("--realizations", realizations, "Override the realization count")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, out_path, seed, realizations, jobs);
    if (*validate) return cmd_validate(config_path);
    if (*oracle) return cmd_oracle(config_path, seed, realizations);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

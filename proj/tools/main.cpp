#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "creg/creg.hpp"

int main(int argc, char** argv) {
  CLI::App app{"causal-region calculus and screening-off condition checks"};
  app.require_subcommand(1);

  CLI::App* demo = app.add_subcommand("demo", "built-in reproductions");
  demo->require_subcommand(1);

  std::string u_star = "1";
  CLI::App* counterexample = demo->add_subcommand(
      "counterexample",
      "show how the closure-based finiteness test misfires on a light-cone "
      "strip");
  counterexample
      ->add_option("--u-star", u_star,
                   "right edge of the strip, a positive rational")
      ->capture_default_str();

  bool simpson_search = false;
  bool simpson_json = false;
  CLI::App* simpson = demo->add_subcommand(
      "simpson", "zero correlation turning nonzero under conditioning");
  simpson->add_flag("--search", simpson_search,
                    "also search the exhaustive model stream for a fresh "
                    "instance");
  simpson->add_flag("--json", simpson_json, "machine-readable output");

  std::string check_path;
  std::string check_condition = "so1";
  bool check_json = false;
  CLI::App* check = app.add_subcommand(
      "check", "evaluate a screening-off condition on a model file");
  check->add_option("model", check_path, "model file (JSON)")->required();
  check->add_option("condition", check_condition,
                    "so1 | so2 | finite-so1 | finite-so2 | so2w");
  check->add_flag("--json", check_json, "machine-readable output");

  creg::SweepCliOptions sweep_options;
  std::int64_t sweep_samples = -1;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "compare condition verdicts across an enumerated model family");
  sweep->add_option("--max-points", sweep_options.max_points,
                    "largest site size")
      ->capture_default_str();
  sweep->add_option("--outcomes", sweep_options.outcomes,
                    "outcomes per point")
      ->capture_default_str();
  sweep->add_option("--denominator", sweep_options.denominator,
                    "exhaustive measure grid denominator")
      ->capture_default_str();
  sweep->add_option("--seed", sweep_options.seed,
                    "random mode: stream seed");
  sweep->add_option("--samples", sweep_samples,
                    "random mode: models to sample (switches mode on)");
  sweep->add_option("--variants", sweep_options.variants,
                    "conditions to evaluate, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--threads", sweep_options.threads, "worker count")
      ->capture_default_str();
  sweep->add_option("--out", sweep_options.out_path,
                    "write the report to this file instead of stdout");

  std::string region_op;
  std::string region_expr;
  CLI::App* regions =
      app.add_subcommand("regions", "light-cone region calculator");
  regions
      ->add_option("--op", region_op,
                   "past | future | complement | closure | rsp-finite")
      ->required();
  regions
      ->add_option("expression", region_expr,
                   "region expression, e.g. \"u>=0 & v<=0 & u<=1\"")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (counterexample->parsed())
      return creg::cmd_demo_counterexample(creg::Rational::parse(u_star),
                                           std::cout);
    if (simpson->parsed())
      return creg::cmd_demo_simpson(simpson_search, simpson_json, std::cout);
    if (check->parsed())
      return creg::cmd_check(check_path, check_condition, check_json,
                             std::cout);
    if (sweep->parsed()) {
      if (sweep_samples >= 0) {
        sweep_options.random = true;
        sweep_options.samples = (std::uint64_t)sweep_samples;
      }
      if (const char* cap = std::getenv("CAUSALREGIONS_MAX_POINTS"))
        sweep_options.point_cap = std::atoi(cap);
      return creg::cmd_sweep(sweep_options, std::cout);
    }
    if (regions->parsed())
      return creg::cmd_region_calc(region_op, region_expr, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

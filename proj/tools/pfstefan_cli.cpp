// pfstefan: run a verification scenario and report measured vs oracle values.
//
//   pfstefan run <config> [--out <dir>] [--quiet]
//   pfstefan scenarios
//   pfstefan --version
//
// Exit status: 0 pass, 1 criterion failure, 2 usage/config error, 3 blow-up.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pfstefan/pfstefan.hpp"

namespace {

constexpr int exit_usage = 2;

int run(const std::string& config, const std::string& out, bool quiet) {
  pfstefan::Scenario s;
  try {
    s = pfstefan::load_config(config);
    if (!out.empty()) s.output_dir = out;
    pfstefan::ensure_writable(s.output_dir);
  } catch (const std::exception& e) {
    std::cerr << "pfstefan: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    const pfstefan::Report r = pfstefan::run_scenario(s);
    if (!quiet) pfstefan::write_report_table(std::cout, r);
    return r.exit_code();
  } catch (const pfstefan::ParameterError& e) {
    std::cerr << "pfstefan: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "pfstefan: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-field vs sharp-interface verification runner", "pfstefan"};
  app.set_version_flag("--version", std::string(pfstefan::version_string));
  app.require_subcommand(1);

  std::string config, out;
  bool quiet = false;
  auto* run_cmd = app.add_subcommand("run", "Run the scenario described by a config file");
  run_cmd->add_option("config", config, "Path to a key = value scenario file")->required();
  run_cmd->add_option("--out", out, "Output directory (overrides output_dir)");
  run_cmd->add_flag("--quiet", quiet, "Suppress the report table");

  auto* list_cmd = app.add_subcommand("scenarios", "List registered scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_usage;
  }

  if (*list_cmd) {
    for (const auto name : pfstefan::scenario_names) std::cout << name << '\n';
    return 0;
  }
  return run(config, out, quiet);
}

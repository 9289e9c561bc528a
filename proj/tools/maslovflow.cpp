// maslovflow <command> --config <file> [--out report.json] [--csv branches.csv]
//            [--seed N] [--steps N] [--tol X]
//
// Exit status: 0 when every assertion passes, 1 on assertion or numerical
// failure, 2 on configuration errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "maslovflow/commands.hpp"
#include "maslovflow/suites.hpp"

namespace {

struct Args {
  std::string config;
  std::string out;
  std::string csv;
  std::optional<std::uint64_t> seed;
  std::optional<int> steps;
  std::optional<double> tol;
  std::string which;
};

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("--config", a.config, "problem configuration (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", a.out, "write the JSON report to this file");
  sub->add_option("--csv", a.csv, "write branch data (lambda,mu,multiplicity) to this file");
  sub->add_option("--seed", a.seed, "random seed for generated suites");
  sub->add_option("--steps", a.steps, "integration steps");
  sub->add_option("--tol", a.tol, "intersection tolerance");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw mf::Error("cannot write " + path);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maslov index and spectral flow toolkit"};
  app.require_subcommand(1);
  Args args;
  for (const char* name : {"maslov", "sflow", "spectra"}) add_common(app.add_subcommand(name), args);
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("which", args.which, "suite")->required()->check(CLI::IsMember(mf::suite_names()));
  add_common(verify, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  mf::ProblemConfig config;
  try {
    config = mf::load_config(args.config);
    if (args.seed) config.seed = *args.seed;
    if (args.steps) config.settings.steps = *args.steps;
    if (args.tol) config.settings.tol = *args.tol;
    config = mf::parse_config(mf::to_json(config));  // revalidate overrides
  } catch (const mf::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    const mf::CommandOutput out = mf::run_command(command, config, args.which);
    const std::string text = out.report.dump(2) + "\n";
    if (!args.out.empty()) {
      write_file(args.out, text);
    } else {
      std::cout << text;
    }
    if (!args.csv.empty()) write_file(args.csv, out.csv);
    if (!args.out.empty()) {
      std::cout << command << (args.which.empty() ? "" : " " + args.which) << ": "
                << (out.pass ? "pass" : "FAIL");
      if (out.report["result"].contains("value")) std::cout << ", value " << out.report["result"]["value"];
      if (out.report["result"].contains("failures"))
        std::cout << ", " << out.report["result"]["failures"] << " of " << out.report["result"]["total"]
                  << " cases failed";
      std::cout << '\n';
    }
    return out.pass ? 0 : 1;
  } catch (const mf::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

// Command-line front end: reads a JSON config, runs one pipeline, emits the
// JSON report (stdout and/or --out) and returns the documented exit code.
#include <omp.h>

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "zetaforms/errors.hpp"
#include "zetaforms/runner.hpp"

namespace {

int run(const std::string& command, const std::string& config_path,
        const std::string& out_path, long precision, int threads) {
  using namespace zetaforms;
  if (threads > 0) omp_set_num_threads(threads);

  Json j;
  {
    std::ifstream f(config_path);
    if (!f) {
      std::cerr << "error: cannot open config " << config_path << "\n";
      return 2;
    }
    try {
      f >> j;
    } catch (const std::exception& e) {
      std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
      return 2;
    }
  }

  RunConfig cfg;
  try {
    cfg = parse_config(j);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (cfg.command != command) {
    std::cerr << "error: config command \"" << cfg.command
              << "\" does not match subcommand \"" << command << "\"\n";
    return 2;
  }
  if (precision > 0) cfg.precision_bits = precision;
  if (!out_path.empty()) cfg.output_path = out_path;

  RunOutcome out = run_command(cfg);
  std::cout << out.report.dump(2) << "\n";
  if (out.exit_code != 0 && out.report.contains("error"))
    std::cerr << "error: " << out.report.at("error").get<std::string>() << "\n";
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear forms in zeta values: constants, verification, search"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  long precision = 0;
  int threads = 0;

  for (const char* name : {"constants", "verify", "search", "report"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config path")->required();
    sub->add_option("--out", out_path, "write the JSON report here");
    sub->add_option("--precision", precision, "working precision in bits (>= 64)");
    sub->add_option("--threads", threads, "OpenMP thread count");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();
  return run(cmd, config_path, out_path, precision, threads);
}

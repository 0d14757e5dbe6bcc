// Batch driver: utm_run --config run.cfg [--out dir] [--seed n]

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "utm/cli.hpp"
#include "utm/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Half-line dispersive IBVP solver and estimate auditor"};
  std::string config_path, out;
  std::uint64_t seed = 0;
  bool print = false;
  app.add_option("--config", config_path, "run configuration (key = value lines)")->required()->check(CLI::ExistingFile);
  auto* out_opt = app.add_option("--out", out, "output directory (overrides `out`)");
  auto* seed_opt = app.add_option("--seed", seed, "audit seed (overrides `seed`)");
  app.add_flag("--print-config", print, "print the canonical configuration and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  std::ifstream in(config_path);
  std::stringstream text;
  text << in.rdbuf();
  utm::RunConfig cfg;
  try {
    cfg = utm::parse_config(text.str());
  } catch (const utm::Error& e) {
    std::cerr << config_path << ":\n" << e.what() << "\n";
    return utm::exit_code(e.kind());
  }
  if (*out_opt) cfg.out = out;
  if (*seed_opt) cfg.seed = seed;
  if (print) {
    std::cout << utm::emit_config(cfg);
    return 0;
  }
  return utm::run(cfg, std::cerr);
}

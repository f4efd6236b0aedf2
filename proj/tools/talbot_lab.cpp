#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"talbot-lab: near-field matter-wave interferometry engine"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool svg = false;

  auto* run = app.add_subcommand("run", "execute a run configuration");
  run->add_option("config", config_path, "JSON run configuration")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--svg", svg, "also write SVG line plots");

  auto* validate = app.add_subcommand("validate", "check a run configuration");
  validate->add_option("config", config_path, "JSON run configuration")->required();

  auto* version = app.add_subcommand("version", "print the tool version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (run->parsed()) return talbot::cli::run_file(config_path, out_dir, svg);
  if (validate->parsed()) return talbot::cli::validate_file(config_path);
  if (version->parsed()) {
    std::cout << "talbot-lab " << talbot::cli::kVersion << "\n";
    return 0;
  }
  return 2;
}

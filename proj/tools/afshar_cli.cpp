#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <afshar/afshar.hpp>

namespace {

afshar::ExperimentConfig load_or_default(const std::string& path) {
  if (path.empty()) return afshar::ExperimentConfig{};
  return afshar::load_config(path);
}

int run_command(const std::string& config_path, const std::string& fig,
                const std::string& out_dir) {
  const afshar::ExperimentConfig cfg = load_or_default(config_path);
  const std::vector<std::string> files =
      afshar::run_figure(cfg, afshar::figure_from_name(fig), out_dir);
  for (const std::string& f : files) std::cout << "wrote " << f << "\n";
  return 0;
}

int check_command(const std::string& config_path) {
  const afshar::ExperimentConfig cfg = load_or_default(config_path);
  const bool ok = afshar::print_acceptance(afshar::run_acceptance(cfg), std::cout);
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Afshar double-slit bench: duality sweeps, fringe envelopes, image profiles"};
  app.set_version_flag("--version", std::string("afshar-duality ") +
                                        afshar::version_string);
  app.require_subcommand(1);

  std::string config_path;
  std::string fig = "fig5";
  std::string out_dir = "out";

  CLI::App* run = app.add_subcommand("run", "run a figure dataset and write CSV + gnuplot + summary");
  run->add_option("--config", config_path, "INI config file (omit for the default bench)")
      ->check(CLI::ExistingFile);
  run->add_option("--fig", fig, "fig3|fig4|fig5|custom")->capture_default_str();
  run->add_option("--out", out_dir, "output directory")->capture_default_str();

  CLI::App* check = app.add_subcommand("check", "run the acceptance checks against this build");
  check->add_option("--config", config_path, "INI config file (omit for the default bench)")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run->parsed()) return run_command(config_path, fig, out_dir);
    return check_command(config_path);
  } catch (const afshar::SimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return afshar::is_setup_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

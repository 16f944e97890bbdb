// tpi-sim: command-line front end for the two-photon interference library.
//
//   tpi-sim <command> --config run.json [--out path] [--format csv|json] [--seed N]

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tpi/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Two-photon interference between remote solid-state emitters"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;

  for (const std::string_view name : tpi::kCommands) {
    CLI::App* sub = app.add_subcommand(std::string(name));
    sub->add_option("--config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "Output file (default: config output.path, else stdout)");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", seed, "Seed for the Monte-Carlo checks");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? tpi::kExitOk : tpi::kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();

  tpi::RunConfig config;
  try {
    config = tpi::load_config(config_path);
  } catch (const tpi::ConfigError& e) {
    std::cerr << "tpi-sim: " << e.what() << '\n';
    return tpi::kExitUsage;
  }
  if (sub->count("--out")) config.output_path = out_path;
  if (sub->count("--format")) config.format = format == "json" ? tpi::OutputFormat::json : tpi::OutputFormat::csv;
  if (sub->count("--seed")) config.seed = seed;

  if (config.output_path.empty()) return tpi::run_command(command, config, std::cout, std::cerr);

  std::ofstream file(config.output_path, std::ios::binary);
  if (!file) {
    std::cerr << "tpi-sim: cannot write '" << config.output_path << "'\n";
    return tpi::kExitRuntime;
  }
  return tpi::run_command(command, config, file, std::cerr);
}

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "kicked/cli.hpp"
#include "kicked/error.hpp"

namespace {

using kicked::Errc;
using kicked::Error;
namespace kc = kicked::cli;

int exit_code(Errc code) {
  switch (code) {
    case Errc::InvalidConfig:
    case Errc::InvalidParameter:
    case Errc::InvalidMatrix:
    case Errc::InvalidDuration:
    case Errc::NotSpecialCase:
      return 2;
    default:
      return 3;
  }
}

void write_outputs(const kc::CommandOutput& out, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, contents] : out.files) {
    const std::filesystem::path path = std::filesystem::path(dir) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(Errc::InvalidConfig, "cannot write " + path.string());
    os << contents;
    std::cout << "wrote " << path.string() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodically kicked few-level systems: effective Hamiltonians, sweeps and pulse design"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  kc::RunOptions options;
  app.add_option("--config", config_path, "Scenario config file (YAML)");
  app.add_option("--out", out_dir, "Output directory (overrides output.path)");
  app.add_option("--threads", options.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--samples-per-period", options.samples_per_period, "Samples per kick period")
      ->check(CLI::PositiveNumber);

  auto* eff2 = app.add_subcommand("eff2", "Two-level effective Hamiltonian report and sweeps");
  auto* sweep3 = app.add_subcommand("sweep3", "Three-level period sweep with regime labels");
  auto* inversion = app.add_subcommand("inversion", "Add and remove kicks to drive a transition");
  auto* squarewave = app.add_subcommand("squarewave", "Square-wave replacement of the kicks");
  auto* figure = app.add_subcommand("figure", "Run a figure preset");
  std::string figure_id;
  bool dump = false;
  bool list = false;
  figure->add_option("id", figure_id, "Figure preset id");
  figure->add_flag("--dump-config", dump, "Print the preset as a config file and exit");
  figure->add_flag("--list", list, "List the preset ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    kc::ScenarioConfig config;
    if (*figure) {
      if (list) {
        for (const std::string& id : kc::figure_ids()) std::cout << id << "\n";
        return 0;
      }
      if (!figure_id.empty()) {
        if (!kc::is_figure_id(figure_id)) {
          std::cerr << "unknown figure id '" << figure_id << "'; use `figure --list`\n";
          return 1;
        }
        if (!config_path.empty()) {
          std::cerr << "give either a figure id or --config, not both\n";
          return 1;
        }
        config = kc::figure_preset(figure_id);
      } else if (!config_path.empty()) {
        config = kc::load_config(config_path);
        if (config.figure.empty()) throw Error(Errc::InvalidConfig, config_path + ": config has no figure id");
      } else {
        std::cerr << "figure needs an id or --config\n";
        return 1;
      }
      if (dump) {
        std::cout << kc::dump_config(config);
        return 0;
      }
    } else {
      if (config_path.empty()) {
        std::cerr << "--config is required for this command\n";
        return 1;
      }
      config = kc::load_config(config_path);
    }

    kc::CommandOutput out;
    if (*figure) {
      out = kc::cmd_figure(config, options);
    } else if (*eff2) {
      out = kc::cmd_eff2(config, options);
    } else if (*sweep3) {
      out = kc::cmd_sweep3(config, options);
    } else if (*inversion) {
      out = kc::cmd_inversion(config, options);
    } else if (*squarewave) {
      out = kc::cmd_squarewave(config, options);
    }
    std::cout << out.report;
    write_outputs(out, out_dir.empty() ? config.output_path : out_dir);
    return 0;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
}

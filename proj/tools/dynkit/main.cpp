#include <chrono>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "config.hpp"
#include "dynkit/common.hpp"
#include "output.hpp"
#include "tasks.hpp"

namespace cli = dynkit::cli;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitSchema = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

void report(const cli::ConfigError& e) {
  for (const auto& d : e.diagnostics()) std::cerr << "error: " << d << '\n';
}

int cmd_validate(const std::string& path) {
  try {
    auto errors = cli::check_config(cli::read_config_file(path));
    if (errors.empty()) {
      std::cout << "ok\n";
      return 0;
    }
    for (const auto& d : errors) std::cout << d << '\n';
    return kExitSchema;
  } catch (const cli::ConfigError& e) {
    for (const auto& d : e.diagnostics()) std::cout << d << '\n';
    return kExitSchema;
  } catch (const cli::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

int cmd_run(const std::string& path, const std::string& out_dir, int threads) {
  const auto start = std::chrono::steady_clock::now();
  try {
    const cli::json cfg = cli::load_config(path);
    cli::OutputDir out(out_dir);
    cli::json summary = cli::run_task(cfg, out, threads);
    cli::json manifest;
    manifest["tool"] = "dynkit";
    manifest["version"] = DYNKIT_VERSION;
    manifest["config_path"] = std::filesystem::absolute(path).string();
    manifest["config"] = cfg;
    manifest["threads"] = threads;
    manifest["summary"] = summary;
    manifest["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    cli::write_manifest(out, manifest);
    return 0;
  } catch (const cli::ConfigError& e) {
    report(e);
    return kExitSchema;
  } catch (const dynkit::InvalidArgument& e) {
    std::cerr << "error: invalid configuration: " << e.what() << '\n';
    return kExitSchema;
  } catch (const dynkit::NumericalError& e) {
    std::cerr << "error: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const cli::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynkit: grid quantum and classical dynamics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DYNKIT_VERSION);

  std::string config, out_dir;
  int threads = 1;
  auto* run = app.add_subcommand("run", "run a simulation config");
  run->add_option("config", config, "config file")->required();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--threads", threads, "worker thread cap")->check(CLI::Range(1, 1024));

  std::string vconfig;
  auto* validate = app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", vconfig, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  if (*run) return cmd_run(config, out_dir, threads);
  return cmd_validate(vconfig);
}

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlslab/error.hpp"
#include "run_config.hpp"
#include "runner.hpp"

namespace cli = nlslab::cli;

namespace {

struct Flags {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> seed;
  std::optional<std::string> workers;
  std::optional<std::string> format;
  std::vector<std::string> set;
  bool print_config = false;
};

std::string keys_help() {
  std::string out = "Config keys (file: 'key = value', '#' comments, lists comma-separated):\n";
  for (const auto& k : cli::config_keys()) out += "  " + k.key + "  " + k.help + "\n";
  out += "Every key can also be set from the environment as NLSLAB_<KEY>, e.g. NLSLAB_GRID_N=128.\n";
  out += "Precedence: defaults < --config file < environment < flags and --set.\n";
  return out;
}

int report_error(const std::string& kind, const std::string& message, const std::optional<std::string>& out_dir) {
  const std::string doc = cli::error_json(kind, message);
  std::cerr << doc << '\n';
  if (out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*out_dir, ec);
    std::ofstream(std::filesystem::path(*out_dir) / "error.json") << doc << '\n';
  }
  return cli::kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlslab: defocusing cubic NLS simulator and I-method estimate laboratory"};
  app.footer(keys_help());
  app.require_subcommand(1);

  Flags flags;
  std::string chosen;
  for (const auto& name : cli::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", flags.config, "key = value config file");
    sub->add_option("--out", flags.out, "output directory (run.out)");
    sub->add_option("--seed", flags.seed, "base seed (run.seed)");
    sub->add_option("--workers", flags.workers, "parallel workers, 0 = all cores (run.workers)");
    sub->add_option("--format", flags.format, "report format (run.format)")->check(CLI::IsMember({"csv", "json", "both"}));
    sub->add_option("--set", flags.set, "override one key, key=value (repeatable)");
    sub->add_flag("--print-config", flags.print_config, "print the resolved config and exit");
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitError;
  }

  cli::RunConfig config;
  try {
    cli::ConfigBuilder builder;
    builder.set("experiment", chosen, "subcommand");
    if (!flags.config.empty()) builder.add_file(flags.config);
    builder.add_environment();
    std::vector<std::string> overrides;
    if (flags.out) overrides.push_back("run.out=" + *flags.out);
    if (flags.seed) overrides.push_back("run.seed=" + *flags.seed);
    if (flags.workers) overrides.push_back("run.workers=" + *flags.workers);
    if (flags.format) overrides.push_back("run.format=" + *flags.format);
    builder.add_assignments(overrides, "flags");
    builder.add_assignments(flags.set, "--set");
    config = builder.build();
  } catch (const cli::ConfigError& e) {
    return report_error("config", e.what(), flags.out);
  } catch (const nlslab::Error& e) {
    return report_error(e.kind(), e.what(), flags.out);
  }

  if (flags.print_config) {
    std::cout << cli::to_text(config);
    return cli::kExitPass;
  }

  try {
    return cli::run(config, std::cout).exit_code;
  } catch (const nlslab::Error& e) {
    return report_error(e.kind(), e.what(), config.out);
  } catch (const std::exception& e) {
    return report_error("error", e.what(), config.out);
  }
}

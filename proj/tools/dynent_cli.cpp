// Command line front end: run, sweep, steady-scan, brf and validate.
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dynent/config.hpp"
#include "dynent/errors.hpp"
#include "dynent/run.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  unsigned workers = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_workers) {
  cmd->add_option("config", args.config_path, "run configuration file")->required();
  cmd->add_option("--seed", args.seed, "override run.seed");
  cmd->add_option("--out", args.out_dir, "output directory (default: $DYNENT_OUT_DIR or .)");
  if (with_workers) cmd->add_option("--workers", args.workers, "sweep worker threads")->check(CLI::PositiveNumber);
}

dynent::RunOptions options_for(const CommonArgs& args) {
  dynent::RunOptions opts;
  if (!args.out_dir.empty()) {
    opts.out_dir = args.out_dir;
  } else if (const char* env = std::getenv("DYNENT_OUT_DIR"); env && *env) {
    opts.out_dir = env;
  }
  return opts;
}

dynent::ConfigDocument load(const CommonArgs& args, std::optional<dynent::RunMode> forced_mode) {
  dynent::ConfigDocument doc = dynent::ConfigDocument::read_file(args.config_path);
  if (args.seed) doc.set("run", "seed", std::to_string(*args.seed));
  if (forced_mode) doc.set("run", "mode", std::string(dynent::to_string(*forced_mode)));
  return doc;
}

void report(const dynent::RunResult& r) {
  for (const std::string& f : r.files) std::cout << "wrote " << f << "\n";
  if (r.periods) std::cout << "periods " << *r.periods << " residual " << *r.residual << "\n";
  if (r.max_concurrence) std::cout << "max_concurrence " << *r.max_concurrence << "\n";
}

int do_sweep(const dynent::ConfigDocument& doc, const CommonArgs& args) {
  const dynent::SweepSpec spec = dynent::parse_sweep(doc);
  const dynent::SweepResult result = dynent::run_sweep(spec, options_for(args), args.workers);
  for (const std::string& f : result.files) std::cout << "wrote " << f << "\n";
  int failed = 0;
  for (const dynent::SweepCell& c : result.cells) {
    if (c.ok) {
      std::cout << "ok " << c.output << "\n";
    } else {
      ++failed;
      std::cerr << "error[" << c.error_category << "]: cell " << c.output << ": " << c.error_message << "\n";
    }
  }
  std::cout << result.cells.size() - failed << "/" << result.cells.size() << " cells succeeded\n";
  return failed == 0 ? 0 : 3;
}

int do_run(const dynent::ConfigDocument& doc, const CommonArgs& args) {
  const dynent::RunConfig config = dynent::resolve_config(doc);
  if (config.mode == dynent::RunMode::sweep) return do_sweep(doc, args);
  report(dynent::run(config, options_for(args)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement dynamics of two driven spins in classical motion"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dynent::version()));

  CommonArgs run_args, sweep_args, scan_args, brf_args, validate_args;
  CLI::App* run_cmd = app.add_subcommand("run", "run the configured mode");
  add_common(run_cmd, run_args, true);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run the Cartesian product of the [sweep] axes");
  add_common(sweep_cmd, sweep_args, true);
  CLI::App* scan_cmd = app.add_subcommand("steady-scan", "static steady-state table over the [scan] grid");
  add_common(scan_cmd, scan_args, false);
  CLI::App* brf_cmd = app.add_subcommand("brf", "bath response function of the [quapi] bath");
  add_common(brf_cmd, brf_args, false);
  CLI::App* validate_cmd = app.add_subcommand("validate", "check a config and print its canonical form");
  validate_cmd->add_option("config", validate_args.config_path, "run configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run_cmd) return do_run(load(run_args, std::nullopt), run_args);
    if (*sweep_cmd) return do_sweep(load(sweep_args, std::nullopt), sweep_args);
    if (*scan_cmd) {
      report(dynent::run(dynent::resolve_config(load(scan_args, dynent::RunMode::steady_scan)),
                         options_for(scan_args)));
      return 0;
    }
    if (*brf_cmd) {
      report(dynent::run(dynent::resolve_config(load(brf_args, dynent::RunMode::brf)), options_for(brf_args)));
      return 0;
    }
    if (*validate_cmd) {
      const dynent::ConfigDocument doc = load(validate_args, std::nullopt);
      std::cout << dynent::to_config_text(dynent::resolve_config(doc));
      if (doc.section("sweep")) {
        const dynent::SweepSpec spec = dynent::parse_sweep(doc);
        std::cout << "\n# sweep: " << spec.cell_count() << " cells, cell_mode = "
                  << dynent::to_string(spec.cell_mode) << "\n";
        for (const dynent::SweepAxis& a : spec.axes) std::cout << "# axis " << a.name() << " (" << a.values.size()
                                                               << " values)\n";
      }
      return 0;
    }
  } catch (const dynent::Error& e) {
    std::cerr << "error[" << e.category() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

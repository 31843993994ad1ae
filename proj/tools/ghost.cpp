#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ghost/io/scenarios.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 2, kSampling = 3, kIo = 4 };

struct RunArgs {
  std::string scenario;
  std::string config;
  std::string out;
  std::string engine;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> realizations;
  unsigned workers = 0;
};

int run(const RunArgs& args) {
  auto cfg = ghost::io::load_config(args.config);
  if (args.engine == "mc") cfg.engine = ghost::Engine::mc;
  else if (args.engine == "analytic") cfg.engine = ghost::Engine::analytic;
  if (args.seed) cfg.seed = *args.seed;
  if (args.realizations) cfg.realizations = *args.realizations;
  const auto m = ghost::io::run_scenario(args.scenario, cfg, args.out, {args.workers});
  for (const auto& w : m.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& s : m.summary) std::cout << args.scenario << ": " << s << "\n";
  std::cout << "wrote " << m.outputs.size() << " file(s) and manifest.txt to " << args.out << " in "
            << m.wall_time_s << " s\n";
  return kOk;
}

int validate(const std::string& path) {
  const auto cfg = ghost::io::load_config(path);
  const auto g = cfg.focus == ghost::io::FocusMode::solve ? ghost::focused(cfg.geometry) : cfg.geometry;
  const ghost::Grid1D grid(cfg.grid_n, cfg.grid_dx);
  int status = kOk;
  for (const auto& name : ghost::io::scenario_names()) {
    const auto r = ghost::io::detail::scenario_sampling(cfg, g, grid, name);
    std::cout << name << ": " << r.summary() << "\n";
    if (!r.ok) status = kSampling;
  }
  const auto lens = ghost::thin_lens_of(g);
  std::cout << "s_o=" << lens.s_o << " m s_i=" << lens.s_i << " m M=" << lens.magnification << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-arm thermal-light ghost imaging simulator"};
  app.require_subcommand(1);

  RunArgs args;
  auto* run_cmd = app.add_subcommand("run", "Run a named scenario and write its outputs");
  run_cmd->add_option("scenario", args.scenario, "Scenario name (see list-scenarios)")->required();
  run_cmd->add_option("--config", args.config, "Configuration file")->required();
  run_cmd->add_option("--out", args.out, "Output directory")->required();
  run_cmd->add_option("--engine", args.engine, "Override engine")->check(CLI::IsMember({"mc", "analytic"}));
  run_cmd->add_option("--seed", args.seed, "Override seed");
  run_cmd->add_option("--realizations", args.realizations, "Override realization count")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--workers", args.workers, "Worker threads (0 = all cores); outputs do not depend on it");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Parse a config and check grid sampling");
  validate_cmd->add_option("--config", validate_path, "Configuration file")->required();

  app.add_subcommand("list-scenarios", "Print the scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run_cmd) return run(args);
    if (*validate_cmd) return validate(validate_path);
    for (const auto& n : ghost::io::scenario_names()) std::cout << n << "\n";
    return kOk;
  } catch (const ghost::io::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const ghost::SamplingError& e) {
    std::cerr << "sampling check failed: " << e.what() << "\n";
    return kSampling;
  } catch (const ghost::io::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const ghost::DomainError& e) {
    std::cerr << "invalid setup: " << e.what() << "\n";
    return kConfig;
  }
}

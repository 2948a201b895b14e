#include "hyper1d/runio.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>

using hyper1d::ordered_json;

namespace {

struct Args {
  std::string config;
  int threads = 0;
  std::string out = "out";
  bool no_cache = false;
};

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("--config", a.config, "JSON config file")->required();
  sub->add_option("--threads", a.threads,
                  "worker threads (0 = hardware concurrency)");
  sub->add_option("--out", a.out, "artifact root directory");
  sub->add_flag("--no-cache", a.no_cache, "recompute even if cached");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"coupled-channel scattering for three particles on a line"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hyper1d::tool_version());

  static const char* const tasks[] = {
      "channels", "scatter",           "bound",    "threshold-scan",
      "universality-scan", "map-1d3d", "fig-recipe"};
  static const char* const blurbs[] = {
      "tabulate adiabatic potentials and couplings",
      "S-matrix on an energy grid",
      "three-body bound states",
      "recombination rate vs collision energy, with power-law fit",
      "scaled lowest potential vs hyperradius",
      "map a 1D contact model to 3D confinement parameters",
      "canned multi-run figure drivers"};
  Args a;
  for (std::size_t i = 0; i < std::size(tasks); ++i)
    add_common(app.add_subcommand(tasks[i], blurbs[i]), a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    ordered_json err{{"error", "usage"}, {"detail", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }

  const std::string task = app.get_subcommands().front()->get_name();
  hyper1d::RunOptions opt;
  opt.out_dir = a.out;
  opt.threads = a.threads > 0
                    ? a.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  opt.use_cache = !a.no_cache;

  try {
    ordered_json cfg = hyper1d::load_config(a.config);
    if (!cfg.is_object())
      throw std::invalid_argument("config: top level must be an object");
    if (!cfg.contains("task")) {
      cfg["task"] = task;
    } else if (!cfg.at("task").is_string() ||
               cfg.at("task").get<std::string>() != task) {
      throw std::invalid_argument("config: 'task' does not match subcommand '" +
                                  task + "'");
    }
    const auto dir = hyper1d::run_task(cfg, opt);
    std::cout << dir.string() << "\n";
    return 0;
  } catch (const std::invalid_argument& e) {
    ordered_json err{{"error", "schema"}, {"detail", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    ordered_json err{{"error", "numerical"}, {"detail", e.what()}};
    std::cerr << err.dump() << "\n";
    return 3;
  }
}

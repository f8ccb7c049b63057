#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "commands.hpp"
#include "kura/version.hpp"

namespace {

void add_graph_flags(CLI::App* cmd, kura::cli::RunConfig& config) {
  cmd->add_option("--graph", config.graph_spec,
                  "Graph family spec (cycle:N, complete:N, bipartite:N,M, eye:D, "
                  "twojoined:N, blowup(SPEC,K), enlarge(SPEC), h36, h60, h90) or an "
                  "edge-list file path")
      ->required();
  cmd->add_flag("--experimental", config.experimental,
                "Allow experimental constructions (h60)");
  cmd->add_option("--out", config.out, "Output path (stdout when omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("kura ") + kura::kVersion +
               " - equilibrium manifolds of coupled phase oscillators on graphs"};
  app.require_subcommand(1);

  kura::cli::RunConfig config;

  auto* gen = app.add_subcommand("gen", "Write the edge list of a graph");
  add_graph_flags(gen, config);

  auto* verify = app.add_subcommand(
      "verify", "Check the torus conditions and the probe-point spectrum of a family");
  add_graph_flags(verify, config);
  verify->add_option("--tol", config.tol, "Zero tolerance for eigenvalue counting");

  auto* scan = app.add_subcommand(
      "scan", "Sweep the torus shift and report the spectrum at every grid point");
  add_graph_flags(scan, config);
  scan->add_option("--grid", config.grid_spec,
                   "Shift grid start:end:count, pi literals allowed (default 0:2pi:256)");
  scan->add_option("--tol", config.tol, "Zero tolerance for eigenvalue counting");
  scan->add_option("--format", config.format, "csv (default) or json");

  auto* equilibria = app.add_subcommand(
      "equilibria", "Seeded equilibrium search with spectra and component labels");
  add_graph_flags(equilibria, config);
  equilibria->add_option("--seed", config.seed, "RNG seed")->required();
  equilibria->add_option("--trials", config.trials, "Random seed count (default 2000)");
  equilibria->add_option("--tol", config.tol, "Newton residual tolerance (default 1e-13)");

  auto* hetero = app.add_subcommand(
      "hetero", "Probe heteroclinic connections between equilibrium components");
  add_graph_flags(hetero, config);
  hetero->add_option("--seed", config.seed, "RNG seed")->required();
  hetero->add_option("--trials", config.trials,
                     "Probes per component and time direction (default 64)");
  hetero->add_option("--dt", config.dt, "RK4 step (default 0.01)");
  hetero->add_option("--t-end", config.t_end, "Integration horizon (default 500)");
  hetero->add_option("--tol", config.tol, "Endpoint membership tolerance (default 1e-3)");

  CLI11_PARSE(app, argc, argv);

  config.command = app.get_subcommands().front()->get_name();
  try {
    return kura::cli::run(config);
  } catch (const std::exception& error) {
    std::string message = error.what();
    for (char& c : message)
      if (c == '"') c = '\'';
    std::cerr << "{\"error\":{\"command\":\"" << config.command << "\",\"message\":\""
              << message << "\"}}\n";
    return 2;
  }
}

#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "cli_util.hpp"
#include "kura/dynamics.hpp"
#include "kura/equilibria.hpp"
#include "kura/family.hpp"
#include "kura/format.hpp"
#include "kura/graph.hpp"
#include "kura/heteroclinic.hpp"
#include "kura/spectral.hpp"
#include "kura/torus.hpp"
#include "kura/version.hpp"

namespace kura::cli {

namespace {

struct ResolvedGraph {
  std::optional<GraphFamily> family;
  Graph graph;
};

ResolvedGraph resolve_graph(const RunConfig& config) {
  try {
    GraphFamily family = parse_family(config.graph_spec);
    if (is_experimental_alias(config.graph_spec) && !config.experimental)
      throw std::invalid_argument(
          "h60 is an experimental interpretation; pass --experimental to use it");
    Graph graph = generate(family);
    return {std::move(family), std::move(graph)};
  } catch (const std::invalid_argument&) {
    if (std::filesystem::exists(config.graph_spec)) {
      std::ifstream in(config.graph_spec);
      return {std::nullopt, read_edge_list(in)};
    }
    throw;
  }
}

/// Output sink: --out path or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
  out << text;
}

void json_numbers(std::ostream& out, const std::vector<double>& values) {
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << format_double(values[i]);
  }
  out << ']';
}

TorusFamily require_torus(const ResolvedGraph& rg, const std::string& spec) {
  if (!rg.family)
    throw std::invalid_argument(
        "graph '" + spec + "' is an edge list; this command needs a graph family");
  auto torus = canonical_torus(*rg.family);
  if (!torus)
    throw std::invalid_argument("no canonical torus family for graph '" + spec + "'");
  return std::move(*torus);
}

int cmd_gen(const RunConfig& config) {
  const ResolvedGraph rg = resolve_graph(config);
  Sink sink(config.out);
  write_edge_list(sink.stream(), rg.graph);
  return 0;
}

int cmd_verify(const RunConfig& config) {
  const ResolvedGraph rg = resolve_graph(config);
  const TorusFamily torus = require_torus(rg, config.graph_spec);
  const int d = torus.partition.part_count();

  int failures = 0;
  auto check = [&failures](const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) std::cout << "  " << detail;
    std::cout << '\n';
    if (!ok) ++failures;
  };

  check("connected", is_connected(rg.graph), "");
  check("lemma_conditions", verify_lemma_conditions(rg.graph, torus, 1e-8), "");

  std::vector<double> shifts(static_cast<std::size_t>(d), std::numbers::pi / 2.0);
  shifts[0] = 0.0;
  const Configuration at_probe = build_torus_config(torus, shifts);
  const double res = residual(rg.graph, at_probe);
  check("torus_residual", res <= 1e-10, "residual=" + format_double(res));

  const SpectrumReport report = spectrum(jacobian(rg.graph, at_probe), config.tol);
  check("zero_count", report.zero_count == d,
        "zero_count=" + std::to_string(report.zero_count) + " expected=" + std::to_string(d));
  double max_nonzero = -std::numeric_limits<double>::infinity();
  for (double ev : report.eigenvalues)
    if (std::abs(ev) > report.zero_tol) max_nonzero = std::max(max_nonzero, ev);
  check("transversal_negative", report.positive_count == 0 && report.zero_count == d,
        "positive_count=" + std::to_string(report.positive_count) +
            " max_nonzero=" + format_double(max_nonzero));

  if (std::holds_alternative<EyeGd>(rg.family->node)) {
    // block spectrum: d copies of the six-cycle splay eigenvalues
    std::vector<double> expected;
    for (int i = 0; i < d; ++i)
      for (double root : {-2.0, -1.5, -1.5, -0.5, -0.5, 0.0}) expected.push_back(root);
    std::sort(expected.begin(), expected.end());
    double deviation = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i)
      deviation = std::max(deviation,
                           std::abs(report.eigenvalues[i] - expected[i]));
    check("sixcycle_block_roots", deviation <= 1e-9, "max_dev=" + format_double(deviation));
  }

  if (failures == 0)
    std::cout << "verify: all checks passed\n";
  else
    std::cout << "verify: " << failures << " check(s) failed\n";
  return failures == 0 ? 0 : 1;
}

int cmd_scan(const RunConfig& config) {
  const ResolvedGraph rg = resolve_graph(config);
  const TorusFamily torus = require_torus(rg, config.graph_spec);
  const int d = torus.partition.part_count();

  const auto betas = grid_points(parse_grid(config.grid_spec));
  std::vector<std::vector<double>> shift_grid;
  shift_grid.reserve(betas.size());
  for (double beta : betas) {
    std::vector<double> shifts(static_cast<std::size_t>(d), beta);
    if (d > 1) shifts[0] = 0.0;
    shift_grid.push_back(std::move(shifts));
  }

  const auto scan = torus_scan(rg.graph, torus, shift_grid, config.tol);
  const std::string meta = std::string("kura ") + kVersion + " scan graph=" +
                           config.graph_spec + " grid=" + config.grid_spec +
                           " zero_tol=" +
                           (config.tol < 0.0 ? "auto" : format_double(config.tol));

  Sink sink(config.out);
  if (config.format == "json") {
    std::ostream& out = sink.stream();
    out << "{\"tool\":\"kura\",\"version\":\"" << kVersion << "\",\"config\":\"" << meta
        << "\",\"points\":[";
    for (std::size_t i = 0; i < scan.size(); ++i) {
      if (i) out << ',';
      out << "{\"shifts\":";
      json_numbers(out, scan[i].shifts);
      out << ",\"eigenvalues\":";
      json_numbers(out, scan[i].report.eigenvalues);
      out << ",\"zero_count\":" << scan[i].report.zero_count << ",\"class\":\""
          << to_string(scan[i].cls) << "\"}";
    }
    out << "]}\n";
  } else if (config.format.empty() || config.format == "csv") {
    write_scan_csv(sink.stream(), scan, meta);
  } else {
    throw std::invalid_argument("scan supports --format csv or json");
  }
  return 0;
}

int cmd_equilibria(const RunConfig& config) {
  const ResolvedGraph rg = resolve_graph(config);
  const int n = rg.graph.vertex_count();
  const int trials = config.trials > 0 ? config.trials : 2000;
  const double newton_tol = config.tol < 0.0 ? 1e-13 : config.tol;

  // structured lattice plus uniform random seeds
  std::vector<Configuration> seeds;
  std::size_t lattice_size = 1;
  for (int j = 1; j < n && lattice_size <= 4096; ++j) lattice_size *= 6;
  if (lattice_size <= 4096) seeds = lattice_seeds(n, 6, 4096);
  Rng rng(config.seed);
  for (Configuration& c : random_seeds(n, trials, rng)) seeds.push_back(std::move(c));

  const SearchReport report = find_equilibria(rg.graph, seeds, newton_tol, 80);
  const auto catalog =
      rg.family ? component_catalog(*rg.family)
                : std::optional<std::vector<EquilibriumComponent>>{};

  Sink sink(config.out);
  std::ostream& out = sink.stream();
  out << "{\"tool\":\"kura\",\"version\":\"" << kVersion << "\",\"config\":{\"command\":"
      << "\"equilibria\",\"graph\":\"" << config.graph_spec << "\",\"seed\":" << config.seed
      << ",\"trials\":" << trials << ",\"newton_tol\":" << format_double(newton_tol)
      << "},\"seeds_total\":" << report.seeds_total << ",\"converged\":" << report.converged
      << ",\"failed\":" << report.failed << ",\"count\":" << report.equilibria.size()
      << ",\"equilibria\":[";
  for (std::size_t i = 0; i < report.equilibria.size(); ++i) {
    const Configuration& c = report.equilibria[i];
    const SpectrumReport spec_report = spectrum(jacobian(rg.graph, c));
    const StabilityClass cls = classify(spec_report, std::max(1, spec_report.zero_count));
    if (i) out << ',';
    out << "{\"phases\":";
    json_numbers(out, c.phases());
    out << ",\"residual\":" << format_double(residual(rg.graph, c))
        << ",\"energy\":" << format_double(energy(rg.graph, c)) << ",\"spectrum\":";
    json_numbers(out, spec_report.eigenvalues);
    out << ",\"zero_count\":" << spec_report.zero_count
        << ",\"positive_count\":" << spec_report.positive_count << ",\"class\":\""
        << to_string(cls) << "\",\"component\":";
    std::optional<std::string> member;
    if (catalog) member = identify_component(c, *catalog, 1e-6);
    if (member)
      out << '"' << *member << '"';
    else
      out << "null";
    out << '}';
  }
  out << "]}\n";
  return 0;
}

int cmd_hetero(const RunConfig& config) {
  const ResolvedGraph rg = resolve_graph(config);
  if (!rg.family)
    throw std::invalid_argument("hetero needs a graph family with a component catalog");
  const auto catalog = component_catalog(*rg.family);
  if (!catalog)
    throw std::invalid_argument("no component catalog for graph '" + config.graph_spec +
                                "' (available: complete:4, cycle:4)");

  ProbeOptions options;
  options.seed = config.seed;
  options.trials = config.trials > 0 ? config.trials : 64;
  if (config.dt > 0.0) options.dt = config.dt;
  if (config.t_end > 0.0) options.t_end = config.t_end;
  if (config.tol >= 0.0) options.membership_tol = config.tol;

  const HeteroclinicDigraph digraph = probe(rg.graph, *catalog, options);

  const std::string meta = std::string("kura ") + kVersion + " hetero graph=" +
                           config.graph_spec + " seed=" + std::to_string(config.seed) +
                           " trials=" + std::to_string(options.trials) +
                           " dt=" + format_double(options.dt) +
                           " t_end=" + format_double(options.t_end);

  if (config.out.empty()) {
    std::cout << export_dot(digraph, meta);
    return 0;
  }
  write_file(config.out + ".dot", export_dot(digraph, meta));
  write_file(config.out + ".json", digraph_to_json(digraph, meta) + "\n");
  write_file(config.out + ".misses.json", misses_to_json(digraph) + "\n");
  std::cout << "hetero: " << digraph.nodes.size() << " nodes, " << digraph.arcs.size()
            << " arcs, " << digraph.misses.size() << " misses -> " << config.out
            << ".{dot,json,misses.json}\n";
  return 0;
}

}  // namespace

int run(const RunConfig& config) {
  if (config.command == "gen") return cmd_gen(config);
  if (config.command == "verify") return cmd_verify(config);
  if (config.command == "scan") return cmd_scan(config);
  if (config.command == "equilibria") return cmd_equilibria(config);
  if (config.command == "hetero") return cmd_hetero(config);
  throw std::invalid_argument("unknown command '" + config.command + "'");
}

}  // namespace kura::cli

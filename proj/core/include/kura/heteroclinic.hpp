#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kura/equilibria.hpp"
#include "kura/graph.hpp"
#include "kura/phase.hpp"

namespace kura {

/// The unique component whose membership test passes within tol; nullopt if
/// none or several pass.
std::optional<std::string> identify_component(
    const Configuration& c, const std::vector<EquilibriumComponent>& components,
    double tol);

struct Witness {
  std::string from_component;  // the probed component
  bool reversed = false;
  int trial = 0;
  double eps = 0.0;
  std::vector<double> perturbation;
  double t_final = 0.0;
  double final_residual = 0.0;
  double final_defect = 0.0;  // pattern defect against the identified target
};

struct HeteroclinicArc {
  std::string source;
  std::string target;
  double source_energy = 0.0;
  double target_energy = 0.0;
  int witness_count = 0;
  Witness best;  // smallest final defect
};

struct ProbeMiss {
  std::string component;
  bool reversed = false;
  int trial = 0;
  std::string reason;
  double t_final = 0.0;
  double final_residual = 0.0;
  std::vector<double> final_phases;
};

struct HeteroclinicNode {
  std::string name;
  double energy = 0.0;
};

/// Arcs always run from strictly higher to strictly lower reference energy
/// and never self-loop; every witness ends within membership tolerance of
/// its target with monotone energy along the orbit.
struct HeteroclinicDigraph {
  std::vector<HeteroclinicNode> nodes;  // energy desc, then name
  std::vector<HeteroclinicArc> arcs;    // sorted; see export_dot ordering
  std::vector<ProbeMiss> misses;
  int self_returns = 0;  // probes that converged back to their source
};

struct ProbeOptions {
  double perturb_eps = 1e-3;
  /// Completely degenerate sample points carry no linear direction
  /// information; they are kicked harder.
  double degenerate_eps = 1e-2;
  int trials = 64;  // per component and time direction
  double dt = 1e-2;
  double t_end = 500.0;
  double endpoint_residual = 1e-8;
  double membership_tol = 1e-3;
  double energy_monotone_tol = 1e-9;  // per step
  std::uint64_t seed = 0;
};

/// For each component: `trials` random tangent-orthogonal kicks integrated
/// forward (outgoing arcs) and in reversed time (incoming arcs). Endpoints
/// must reach residual < endpoint_residual and identify uniquely; everything
/// else lands in `misses`. Deterministic for a fixed seed at any thread
/// count. Throws std::invalid_argument if a component fails its sampled
/// residual/energy validation.
HeteroclinicDigraph probe(const Graph& g,
                          const std::vector<EquilibriumComponent>& components,
                          const ProbeOptions& options);

/// Deterministic DOT text; nodes annotated with energy, arcs with witness
/// counts; ordering is (energy desc, name).
std::string export_dot(const HeteroclinicDigraph& h, const std::string& meta = {});

/// Arc list with witness metadata (misses excluded; see write_misses_json).
std::string digraph_to_json(const HeteroclinicDigraph& h, const std::string& config_echo = {});

std::string misses_to_json(const HeteroclinicDigraph& h);

}  // namespace kura

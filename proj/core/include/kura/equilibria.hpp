#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kura/family.hpp"
#include "kura/graph.hpp"
#include "kura/phase.hpp"
#include "kura/rng.hpp"

namespace kura {

/// One representative per sign pattern with theta_0 = 0 and phases in {0, pi};
/// all of them are equilibria of every graph. Guarded to n <= 24.
std::vector<Configuration> aligned_equilibria(const Graph& g);

enum class BipartiteCase {
  BothBalanced,
  KBalancedAlignedToJ,
  JBalancedAlignedToK,
  Aligned,
  NotEquilibrium,
};

std::string to_string(BipartiteCase c);

/// Equilibrium shape on the complete bipartite graph with parts J and K.
/// The cases overlap; priority is Aligned, then BothBalanced, then the
/// one-sided cases, with NotEquilibrium when the residual exceeds tol.
BipartiteCase classify_bipartite(const Configuration& c, const std::vector<int>& J,
                                 const std::vector<int>& K, double tol = 1e-8);

struct SearchReport {
  std::vector<Configuration> equilibria;  // gauge-fixed, deduplicated
  int seeds_total = 0;
  int converged = 0;
  int failed = 0;  // non-convergence is per-seed, never fatal
};

/// Gradient descent followed by damped Newton in the gauge theta_0 = 0 (the
/// reduced (n-1)x(n-1) Jacobian; the full one is always singular). Results
/// are deduplicated by torus_distance <= 1e-6.
SearchReport find_equilibria(const Graph& g, const std::vector<Configuration>& seeds,
                             double newton_tol = 1e-13, int max_iter = 80);

/// Every Jacobian eigenvalue within tol of zero. Throws if c is not an
/// equilibrium within tol.
bool is_completely_degenerate(const Graph& g, const Configuration& c, double tol = 1e-8);

/// A named equilibrium family: a closed-form membership pattern with free
/// parameters, its constant energy, and the tangent directions of the family.
struct EquilibriumComponent {
  std::string name;
  double energy = 0.0;
  int n = 0;
  int param_count = 0;
  /// Shift-invariant pattern violation; membership means defect <= tol.
  std::function<double(const Configuration&)> defect;
  std::function<Configuration(std::span<const double>)> sample;
  std::vector<std::vector<double>> tangents;

  bool contains(const Configuration& c, double tol) const { return defect(c) <= tol; }
  Configuration sample_random(Rng& rng) const;
};

/// The component catalogs of the two fully mapped four-vertex graphs.
std::vector<EquilibriumComponent> complete4_components();
std::vector<EquilibriumComponent> cycle4_components();

/// Catalog for a graph family when one is known (complete:4, cycle:4).
std::optional<std::vector<EquilibriumComponent>> component_catalog(const GraphFamily& family);

/// Structured seeds: all phase vectors with theta_0 = 0 and entries in
/// multiples of 2pi/divisions. Throws if divisions^(n-1) exceeds max_count.
std::vector<Configuration> lattice_seeds(int n, int divisions = 6,
                                         std::size_t max_count = 8192);

std::vector<Configuration> random_seeds(int n, int count, Rng& rng);

}  // namespace kura

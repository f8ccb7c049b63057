#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kura/family.hpp"
#include "kura/graph.hpp"
#include "kura/phase.hpp"

namespace kura {

/// Partition of the vertices 0..n-1 into nonempty, disjoint, covering parts.
/// Part order and the vertex order inside each part are significant: they
/// define the mapping onto per-part configurations.
class Partition {
 public:
  Partition(int vertex_count, std::vector<std::vector<int>> parts);

  int vertex_count() const { return n_; }
  int part_count() const { return static_cast<int>(parts_.size()); }
  const std::vector<std::vector<int>>& parts() const { return parts_; }
  /// vertex -> part index
  const std::vector<int>& part_of() const { return part_of_; }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> parts_;
  std::vector<int> part_of_;
};

/// Per-part base configurations together with a partition: applying one shift
/// per part sweeps out a part_count-dimensional torus of configurations.
struct TorusFamily {
  Partition partition;
  std::vector<Configuration> part_configs;
};

/// Assembles the full configuration with part p shifted by shifts[p].
Configuration build_torus_config(const std::vector<Configuration>& part_configs,
                                 const Partition& partition,
                                 std::span<const double> shifts);
Configuration build_torus_config(const TorusFamily& family, std::span<const double> shifts);

/// Checks the two torus conditions on a full configuration: every part is
/// internally at equilibrium, and for every vertex the neighbor set inside
/// each foreign part is balanced (empty sets count as balanced).
bool verify_lemma_conditions(const Graph& g, const Partition& partition,
                             const Configuration& c, double tol = 1e-8);
bool verify_lemma_conditions(const Graph& g, const TorusFamily& family, double tol = 1e-8);

/// The natural splay-based torus family of a graph family, when one exists:
/// cycles and complete graphs carry a single part, eye graphs one part per
/// six-cycle, joined cycle pairs and bipartite graphs two parts. Blow-ups and
/// enlargements lift the base family. Returns nullopt where no canonical
/// choice exists.
std::optional<TorusFamily> canonical_torus(const GraphFamily& family);

}  // namespace kura

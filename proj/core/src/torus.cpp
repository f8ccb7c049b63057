#include "kura/torus.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace kura {

Partition::Partition(int vertex_count, std::vector<std::vector<int>> parts)
    : n_(vertex_count), parts_(std::move(parts)) {
  if (n_ < 1) throw std::invalid_argument("partition: empty vertex set");
  part_of_.assign(static_cast<std::size_t>(n_), -1);
  for (std::size_t p = 0; p < parts_.size(); ++p) {
    if (parts_[p].empty()) throw std::invalid_argument("partition: empty part");
    for (int v : parts_[p]) {
      if (v < 0 || v >= n_)
        throw std::invalid_argument("partition: vertex " + std::to_string(v) +
                                    " out of range");
      if (part_of_[static_cast<std::size_t>(v)] != -1)
        throw std::invalid_argument("partition: vertex " + std::to_string(v) +
                                    " appears twice");
      part_of_[static_cast<std::size_t>(v)] = static_cast<int>(p);
    }
  }
  for (int v = 0; v < n_; ++v)
    if (part_of_[static_cast<std::size_t>(v)] == -1)
      throw std::invalid_argument("partition: vertex " + std::to_string(v) +
                                  " not covered");
}

Configuration build_torus_config(const std::vector<Configuration>& part_configs,
                                 const Partition& partition,
                                 std::span<const double> shifts) {
  const auto d = static_cast<std::size_t>(partition.part_count());
  if (part_configs.size() != d)
    throw std::invalid_argument("build_torus_config: per-part configuration count "
                                "does not match part count");
  if (shifts.size() != d)
    throw std::invalid_argument("build_torus_config: expected " + std::to_string(d) +
                                " shifts, got " + std::to_string(shifts.size()));

  std::vector<double> phases(static_cast<std::size_t>(partition.vertex_count()), 0.0);
  for (std::size_t p = 0; p < d; ++p) {
    const auto& vertices = partition.parts()[p];
    if (part_configs[p].size() != vertices.size())
      throw std::invalid_argument("build_torus_config: part " + std::to_string(p) +
                                  " configuration length mismatch");
    for (std::size_t i = 0; i < vertices.size(); ++i)
      phases[static_cast<std::size_t>(vertices[i])] = part_configs[p][i] + shifts[p];
  }
  return Configuration(std::move(phases));
}

Configuration build_torus_config(const TorusFamily& family, std::span<const double> shifts) {
  return build_torus_config(family.part_configs, family.partition, shifts);
}

bool verify_lemma_conditions(const Graph& g, const Partition& partition,
                             const Configuration& c, double tol) {
  if (partition.vertex_count() != g.vertex_count() ||
      static_cast<std::size_t>(g.vertex_count()) != c.size())
    throw std::invalid_argument("verify_lemma_conditions: size mismatch");
  if (tol <= 0.0) throw std::invalid_argument("verify_lemma_conditions: tol must be positive");

  const auto& part_of = partition.part_of();
  const int d = partition.part_count();
  for (int j = 0; j < g.vertex_count(); ++j) {
    const int p = part_of[static_cast<std::size_t>(j)];
    // (i) internal equilibrium of j's part
    double internal = 0.0;
    // (ii) per foreign part, the neighbor set must be balanced
    std::vector<std::complex<double>> foreign(static_cast<std::size_t>(d), {0.0, 0.0});
    for (int k : g.neighbors(j)) {
      const int q = part_of[static_cast<std::size_t>(k)];
      if (q == p)
        internal += std::sin(c[static_cast<std::size_t>(k)] -
                             c[static_cast<std::size_t>(j)]);
      else
        foreign[static_cast<std::size_t>(q)] +=
            std::complex<double>(std::cos(c[static_cast<std::size_t>(k)]),
                                 std::sin(c[static_cast<std::size_t>(k)]));
    }
    if (std::abs(internal) > tol) return false;
    for (int q = 0; q < d; ++q)
      if (q != p && std::abs(foreign[static_cast<std::size_t>(q)]) > tol) return false;
  }
  return true;
}

bool verify_lemma_conditions(const Graph& g, const TorusFamily& family, double tol) {
  const std::vector<double> zero_shifts(
      static_cast<std::size_t>(family.partition.part_count()), 0.0);
  return verify_lemma_conditions(g, family.partition,
                                 build_torus_config(family, zero_shifts), tol);
}

namespace {

std::optional<TorusFamily> lift_blowup(const TorusFamily& base, int k) {
  const int nb = base.partition.vertex_count();
  std::vector<std::vector<int>> parts(base.partition.parts().size());
  std::vector<std::vector<double>> phases(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& base_vertices = base.partition.parts()[p];
    for (std::size_t i = 0; i < base_vertices.size(); ++i) {
      for (int t = 0; t < k; ++t) {
        parts[p].push_back(base_vertices[i] * k + t);
        phases[p].push_back(base.part_configs[p][i]);
      }
    }
  }
  std::vector<Configuration> configs;
  configs.reserve(phases.size());
  for (auto& ph : phases) configs.emplace_back(std::move(ph));
  return TorusFamily{Partition(nb * k, std::move(parts)), std::move(configs)};
}

std::optional<TorusFamily> lift_enlargement(const TorusFamily& base) {
  const int nb = base.partition.vertex_count();
  std::vector<std::vector<int>> parts = base.partition.parts();
  std::vector<std::vector<double>> phases(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p)
    phases[p] = base.part_configs[p].phases();

  // pendant path vertices join their anchor's part, synchronized with it
  int next = nb;
  for (int j = 0; j < nb; ++j) {
    const auto p = static_cast<std::size_t>(base.partition.part_of()[static_cast<std::size_t>(j)]);
    const auto anchor_slot = static_cast<std::size_t>(
        std::find(parts[p].begin(), parts[p].end(), j) - parts[p].begin());
    const double anchor_phase = phases[p][anchor_slot];
    for (int step = 0; step <= j; ++step) {
      parts[p].push_back(next++);
      phases[p].push_back(anchor_phase);
    }
  }
  std::vector<Configuration> configs;
  configs.reserve(phases.size());
  for (auto& ph : phases) configs.emplace_back(std::move(ph));
  return TorusFamily{Partition(next, std::move(parts)), std::move(configs)};
}

std::vector<int> iota_part(int start, int count) {
  std::vector<int> part(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) part[static_cast<std::size_t>(i)] = start + i;
  return part;
}

}  // namespace

std::optional<TorusFamily> canonical_torus(const GraphFamily& family) {
  return std::visit(
      [](const auto& f) -> std::optional<TorusFamily> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Cycle>) {
          return TorusFamily{Partition(f.n, {iota_part(0, f.n)}), {splay(f.n)}};
        } else if constexpr (std::is_same_v<T, Complete>) {
          if (f.n < 2) return std::nullopt;
          return TorusFamily{Partition(f.n, {iota_part(0, f.n)}), {splay(f.n)}};
        } else if constexpr (std::is_same_v<T, CompleteBipartite>) {
          if (f.n < 2 || f.m < 2) return std::nullopt;  // stars have no balanced side
          return TorusFamily{
              Partition(f.n + f.m, {iota_part(0, f.n), iota_part(f.n, f.m)}),
              {splay(f.n), splay(f.m)}};
        } else if constexpr (std::is_same_v<T, EyeGd>) {
          std::vector<std::vector<int>> parts;
          std::vector<Configuration> configs;
          for (int i = 0; i < f.d; ++i) {
            parts.push_back(iota_part(6 * i, 6));
            configs.push_back(splay(6));
          }
          return TorusFamily{Partition(6 * f.d, std::move(parts)), std::move(configs)};
        } else if constexpr (std::is_same_v<T, TwoFullyJoinedCycles>) {
          return TorusFamily{
              Partition(2 * f.n, {iota_part(0, f.n), iota_part(f.n, f.n)}),
              {splay(f.n), splay(f.n)}};
        } else if constexpr (std::is_same_v<T, Blowup>) {
          auto base = canonical_torus(*f.base);
          if (!base) return std::nullopt;
          return lift_blowup(*base, f.k);
        } else {
          auto base = canonical_torus(*f.base);
          if (!base) return std::nullopt;
          return lift_enlargement(*base);
        }
      },
      family.node);
}

}  // namespace kura

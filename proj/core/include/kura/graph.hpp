#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

namespace kura {

/// Undirected simple graph on vertices 0..n-1. Values are immutable after
/// construction and safe to read from any number of threads.
class Graph {
 public:
  /// Edges are normalized to (min, max) and sorted; loops, duplicates and
  /// out-of-range endpoints are rejected with std::invalid_argument.
  Graph(int vertex_count, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Sorted adjacency of j; throws std::out_of_range for bad vertices.
  const std::vector<int>& neighbors(int j) const;
  int degree(int j) const { return static_cast<int>(neighbors(j).size()); }
  bool has_edge(int u, int v) const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

bool is_connected(const Graph& g);

/// Edge-list text format: first line "n", then one "u v" line per edge,
/// 0-based. The reader rejects loops, duplicates and malformed input.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

}  // namespace kura

#pragma once

#include <memory>
#include <string>
#include <variant>

#include "kura/graph.hpp"

namespace kura {

struct GraphFamily;

struct Cycle {
  int n;
};
struct Complete {
  int n;
};
struct CompleteBipartite {
  int n;
  int m;
};
/// d six-cycles; cycle i occupies vertices 6i..6i+5 in cycle order, and for
/// i >= 1 the four cross edges {0,6i}, {0,6i+3}, {3,6i}, {3,6i+3} join it to
/// cycle 0.
struct EyeGd {
  int d;
};
struct TwoFullyJoinedCycles {
  int n;
};
/// Each base vertex becomes k independent copies; copy-classes of adjacent
/// base vertices are joined completely. Copy t of base vertex v is v*k + t.
struct Blowup {
  std::shared_ptr<const GraphFamily> base;
  int k;
};
/// Attaches to base vertex j a pendant path with j+1 edges; path vertices of
/// vertex j start at n + j(j+1)/2.
struct AsymmetricEnlargement {
  std::shared_ptr<const GraphFamily> base;
};

struct GraphFamily {
  std::variant<Cycle, Complete, CompleteBipartite, EyeGd, TwoFullyJoinedCycles,
               Blowup, AsymmetricEnlargement>
      node;
};

GraphFamily cycle(int n);
GraphFamily complete(int n);
GraphFamily complete_bipartite(int n, int m);
GraphFamily eye_gd(int d);
GraphFamily two_fully_joined_cycles(int n);
GraphFamily blowup(GraphFamily base, int k);
GraphFamily asymmetric_enlargement(GraphFamily base);

bool operator==(const GraphFamily& a, const GraphFamily& b);
inline bool operator!=(const GraphFamily& a, const GraphFamily& b) { return !(a == b); }

/// Deterministic construction: equal family values produce identical graphs.
Graph generate(const GraphFamily& family);

/// Compact spec syntax, also accepted by parse_family:
///   cycle:N  complete:N  bipartite:N,M  eye:D  twojoined:N
///   blowup(SPEC,K)  enlarge(SPEC)  and aliases h36, h60, h90.
std::string to_string(const GraphFamily& family);
GraphFamily parse_family(const std::string& spec);

/// h60 is an interpretation of a construction that is not fully pinned down;
/// the CLI requires --experimental before accepting it.
bool is_experimental_alias(const std::string& spec);

std::string family_to_json(const GraphFamily& family);
GraphFamily family_from_json(const std::string& text);

}  // namespace kura

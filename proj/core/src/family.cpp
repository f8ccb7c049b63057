#include "kura/family.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <utility>

namespace kura {

namespace {

using nlohmann::json;

void require_positive(int value, const char* what) {
  if (value < 1) throw std::invalid_argument(std::string(what) + " must be positive");
}

void require_cycle_length(int n) {
  if (n < 3) throw std::invalid_argument("cycle length must be at least 3");
}

}  // namespace

GraphFamily cycle(int n) {
  require_cycle_length(n);
  return GraphFamily{Cycle{n}};
}

GraphFamily complete(int n) {
  require_positive(n, "complete: n");
  return GraphFamily{Complete{n}};
}

GraphFamily complete_bipartite(int n, int m) {
  require_positive(n, "bipartite: n");
  require_positive(m, "bipartite: m");
  return GraphFamily{CompleteBipartite{n, m}};
}

GraphFamily eye_gd(int d) {
  require_positive(d, "eye: d");
  return GraphFamily{EyeGd{d}};
}

GraphFamily two_fully_joined_cycles(int n) {
  require_cycle_length(n);
  return GraphFamily{TwoFullyJoinedCycles{n}};
}

GraphFamily blowup(GraphFamily base, int k) {
  require_positive(k, "blowup: k");
  return GraphFamily{Blowup{std::make_shared<const GraphFamily>(std::move(base)), k}};
}

GraphFamily asymmetric_enlargement(GraphFamily base) {
  return GraphFamily{
      AsymmetricEnlargement{std::make_shared<const GraphFamily>(std::move(base))}};
}

bool operator==(const GraphFamily& a, const GraphFamily& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&b](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Cycle> || std::is_same_v<T, Complete> ||
                      std::is_same_v<T, TwoFullyJoinedCycles>) {
          return lhs.n == rhs.n;
        } else if constexpr (std::is_same_v<T, CompleteBipartite>) {
          return lhs.n == rhs.n && lhs.m == rhs.m;
        } else if constexpr (std::is_same_v<T, EyeGd>) {
          return lhs.d == rhs.d;
        } else if constexpr (std::is_same_v<T, Blowup>) {
          return lhs.k == rhs.k && *lhs.base == *rhs.base;
        } else {
          return *lhs.base == *rhs.base;
        }
      },
      a.node);
}

namespace {

std::vector<std::pair<int, int>> cycle_edges(int n, int offset) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) edges.emplace_back(offset + i, offset + (i + 1) % n);
  return edges;
}

Graph generate_impl(const GraphFamily& family) {
  return std::visit(
      [](const auto& f) -> Graph {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Cycle>) {
          require_cycle_length(f.n);
          return Graph(f.n, cycle_edges(f.n, 0));
        } else if constexpr (std::is_same_v<T, Complete>) {
          require_positive(f.n, "complete: n");
          std::vector<std::pair<int, int>> edges;
          for (int i = 0; i < f.n; ++i)
            for (int j = i + 1; j < f.n; ++j) edges.emplace_back(i, j);
          return Graph(f.n, std::move(edges));
        } else if constexpr (std::is_same_v<T, CompleteBipartite>) {
          require_positive(f.n, "bipartite: n");
          require_positive(f.m, "bipartite: m");
          std::vector<std::pair<int, int>> edges;
          for (int i = 0; i < f.n; ++i)
            for (int j = 0; j < f.m; ++j) edges.emplace_back(i, f.n + j);
          return Graph(f.n + f.m, std::move(edges));
        } else if constexpr (std::is_same_v<T, EyeGd>) {
          require_positive(f.d, "eye: d");
          std::vector<std::pair<int, int>> edges;
          for (int i = 0; i < f.d; ++i) {
            auto ring = cycle_edges(6, 6 * i);
            edges.insert(edges.end(), ring.begin(), ring.end());
          }
          // first and fourth vertex of cycle 0 to the same pair of every
          // other cycle
          for (int i = 1; i < f.d; ++i) {
            edges.emplace_back(0, 6 * i);
            edges.emplace_back(0, 6 * i + 3);
            edges.emplace_back(3, 6 * i);
            edges.emplace_back(3, 6 * i + 3);
          }
          return Graph(6 * f.d, std::move(edges));
        } else if constexpr (std::is_same_v<T, TwoFullyJoinedCycles>) {
          require_cycle_length(f.n);
          std::vector<std::pair<int, int>> edges = cycle_edges(f.n, 0);
          auto second = cycle_edges(f.n, f.n);
          edges.insert(edges.end(), second.begin(), second.end());
          for (int i = 0; i < f.n; ++i)
            for (int j = 0; j < f.n; ++j) edges.emplace_back(i, f.n + j);
          return Graph(2 * f.n, std::move(edges));
        } else if constexpr (std::is_same_v<T, Blowup>) {
          require_positive(f.k, "blowup: k");
          const Graph base = generate_impl(*f.base);
          const int k = f.k;
          std::vector<std::pair<int, int>> edges;
          edges.reserve(base.edge_count() * static_cast<std::size_t>(k) *
                        static_cast<std::size_t>(k));
          for (const auto& [u, v] : base.edges())
            for (int s = 0; s < k; ++s)
              for (int t = 0; t < k; ++t) edges.emplace_back(u * k + s, v * k + t);
          return Graph(base.vertex_count() * k, std::move(edges));
        } else {
          const Graph base = generate_impl(*f.base);
          const int nb = base.vertex_count();
          std::vector<std::pair<int, int>> edges = base.edges();
          int next = nb;
          for (int j = 0; j < nb; ++j) {
            int prev = j;
            for (int step = 0; step <= j; ++step) {
              edges.emplace_back(prev, next);
              prev = next++;
            }
          }
          return Graph(next, std::move(edges));
        }
      },
      family.node);
}

}  // namespace

Graph generate(const GraphFamily& family) { return generate_impl(family); }

std::string to_string(const GraphFamily& family) {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Cycle>) {
          return "cycle:" + std::to_string(f.n);
        } else if constexpr (std::is_same_v<T, Complete>) {
          return "complete:" + std::to_string(f.n);
        } else if constexpr (std::is_same_v<T, CompleteBipartite>) {
          return "bipartite:" + std::to_string(f.n) + "," + std::to_string(f.m);
        } else if constexpr (std::is_same_v<T, EyeGd>) {
          return "eye:" + std::to_string(f.d);
        } else if constexpr (std::is_same_v<T, TwoFullyJoinedCycles>) {
          return "twojoined:" + std::to_string(f.n);
        } else if constexpr (std::is_same_v<T, Blowup>) {
          return "blowup(" + to_string(*f.base) + "," + std::to_string(f.k) + ")";
        } else {
          return "enlarge(" + to_string(*f.base) + ")";
        }
      },
      family.node);
}

namespace {

struct FamilyParser {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("graph spec '" + text + "': " + why);
  }

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected a family name");
    return text.substr(start, pos - start);
  }

  int integer() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected an integer");
    return std::stoi(text.substr(start, pos - start));
  }

  GraphFamily family() {
    const std::string name = ident();
    if (name == "h36") return blowup(eye_gd(2), 3);
    if (name == "h60") return blowup(eye_gd(2), 5);
    if (name == "h90") return blowup(two_fully_joined_cycles(5), 9);
    if (name == "blowup") {
      expect('(');
      GraphFamily base = family();
      expect(',');
      const int k = integer();
      expect(')');
      return blowup(std::move(base), k);
    }
    if (name == "enlarge") {
      expect('(');
      GraphFamily base = family();
      expect(')');
      return asymmetric_enlargement(std::move(base));
    }
    expect(':');
    if (name == "cycle") return cycle(integer());
    if (name == "complete") return complete(integer());
    if (name == "eye") return eye_gd(integer());
    if (name == "twojoined") return two_fully_joined_cycles(integer());
    if (name == "bipartite") {
      const int n = integer();
      expect(',');
      const int m = integer();
      return complete_bipartite(n, m);
    }
    fail("unknown family '" + name + "'");
  }
};

}  // namespace

GraphFamily parse_family(const std::string& spec) {
  FamilyParser parser{spec};
  GraphFamily result = parser.family();
  parser.skip_space();
  if (parser.pos != spec.size()) parser.fail("trailing characters");
  return result;
}

bool is_experimental_alias(const std::string& spec) {
  FamilyParser parser{spec};
  parser.skip_space();
  return spec.substr(parser.pos) == "h60";
}

namespace {

json family_json(const GraphFamily& family) {
  return std::visit(
      [](const auto& f) -> json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Cycle>) {
          return {{"family", "cycle"}, {"n", f.n}};
        } else if constexpr (std::is_same_v<T, Complete>) {
          return {{"family", "complete"}, {"n", f.n}};
        } else if constexpr (std::is_same_v<T, CompleteBipartite>) {
          return {{"family", "bipartite"}, {"n", f.n}, {"m", f.m}};
        } else if constexpr (std::is_same_v<T, EyeGd>) {
          return {{"family", "eye"}, {"d", f.d}};
        } else if constexpr (std::is_same_v<T, TwoFullyJoinedCycles>) {
          return {{"family", "twojoined"}, {"n", f.n}};
        } else if constexpr (std::is_same_v<T, Blowup>) {
          return {{"family", "blowup"}, {"k", f.k}, {"base", family_json(*f.base)}};
        } else {
          return {{"family", "enlarge"}, {"base", family_json(*f.base)}};
        }
      },
      family.node);
}

GraphFamily family_from(const json& j) {
  const std::string kind = j.at("family").get<std::string>();
  if (kind == "cycle") return cycle(j.at("n").get<int>());
  if (kind == "complete") return complete(j.at("n").get<int>());
  if (kind == "bipartite")
    return complete_bipartite(j.at("n").get<int>(), j.at("m").get<int>());
  if (kind == "eye") return eye_gd(j.at("d").get<int>());
  if (kind == "twojoined") return two_fully_joined_cycles(j.at("n").get<int>());
  if (kind == "blowup") return blowup(family_from(j.at("base")), j.at("k").get<int>());
  if (kind == "enlarge") return asymmetric_enlargement(family_from(j.at("base")));
  throw std::invalid_argument("graph family json: unknown kind '" + kind + "'");
}

}  // namespace

std::string family_to_json(const GraphFamily& family) { return family_json(family).dump(); }

GraphFamily family_from_json(const std::string& text) {
  return family_from(json::parse(text));
}

}  // namespace kura

#include "kura/equilibria.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kura/dynamics.hpp"
#include "kura/parallel.hpp"
#include "kura/spectral.hpp"

namespace kura {

namespace {

constexpr double kPi = std::numbers::pi;

/// Circular distance of an angle expression to 0.
double circ0(double x) { return circular_distance(x, 0.0); }

}  // namespace

std::vector<Configuration> aligned_equilibria(const Graph& g) {
  const int n = g.vertex_count();
  if (n < 1) throw std::invalid_argument("aligned_equilibria: empty graph");
  if (n > 24)
    throw std::invalid_argument("aligned_equilibria: 2^(n-1) enumeration guard, n <= 24");
  const std::size_t count = std::size_t{1} << (n - 1);
  std::vector<Configuration> result;
  result.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<double> phases(static_cast<std::size_t>(n), 0.0);
    for (int j = 1; j < n; ++j)
      if (mask >> (j - 1) & 1) phases[static_cast<std::size_t>(j)] = kPi;
    result.emplace_back(std::move(phases));
  }
  return result;
}

std::string to_string(BipartiteCase c) {
  switch (c) {
    case BipartiteCase::BothBalanced: return "both_balanced";
    case BipartiteCase::KBalancedAlignedToJ: return "k_balanced_aligned_to_j";
    case BipartiteCase::JBalancedAlignedToK: return "j_balanced_aligned_to_k";
    case BipartiteCase::Aligned: return "aligned";
    case BipartiteCase::NotEquilibrium: return "not_equilibrium";
  }
  return "?";
}

namespace {

/// Every phase of `side` within tol of dir or dir + pi.
bool aligned_to_direction(const Configuration& c, const std::vector<int>& side,
                          double dir, double tol) {
  for (int k : side) {
    const double d = circular_distance(c[static_cast<std::size_t>(k)], dir);
    if (std::min(d, std::abs(d - kPi)) > tol) return false;
  }
  return true;
}

}  // namespace

BipartiteCase classify_bipartite(const Configuration& c, const std::vector<int>& J,
                                 const std::vector<int>& K, double tol) {
  const std::size_t n = c.size();
  if (J.empty() || K.empty())
    throw std::invalid_argument("classify_bipartite: empty part");
  std::vector<char> seen(n, 0);
  auto mark = [&](const std::vector<int>& side) {
    for (int v : side) {
      if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("classify_bipartite: J, K must partition the vertices");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  };
  mark(J);
  mark(K);
  if (J.size() + K.size() != n)
    throw std::invalid_argument("classify_bipartite: J, K must partition the vertices");

  if (is_aligned(c, tol)) return BipartiteCase::Aligned;

  const bool balanced_j = is_balanced(c, J, tol);
  const bool balanced_k = is_balanced(c, K, tol);
  if (balanced_j && balanced_k) return BipartiteCase::BothBalanced;

  if (balanced_k && !balanced_j) {
    const auto sum_j = order_parameter(c, J);
    if (aligned_to_direction(c, K, std::arg(sum_j), tol))
      return BipartiteCase::KBalancedAlignedToJ;
  }
  if (balanced_j && !balanced_k) {
    const auto sum_k = order_parameter(c, K);
    if (aligned_to_direction(c, J, std::arg(sum_k), tol))
      return BipartiteCase::JBalancedAlignedToK;
  }

  return BipartiteCase::NotEquilibrium;
}

namespace {

struct NewtonOutcome {
  Configuration point{std::vector<double>{}};
  double residual = 0.0;
  bool converged = false;
};

NewtonOutcome refine_seed(const Graph& g, const Configuration& seed, double newton_tol,
                          int max_iter) {
  const int n = g.vertex_count();
  std::vector<double> th = seed.phases();

  // descent stage pulls the seed toward the critical set
  std::vector<double> f;
  for (int step = 0; step < 50; ++step) {
    f = rhs(g, Configuration(th));
    for (int j = 0; j < n; ++j)
      th[static_cast<std::size_t>(j)] =
          reduce_angle(th[static_cast<std::size_t>(j)] + 0.1 * f[static_cast<std::size_t>(j)]);
  }

  auto gauge = [&](std::vector<double>& v) {
    const double base = v[0];
    for (double& x : v) x = reduce_angle(x - base);
  };
  gauge(th);

  auto max_norm = [](const std::vector<double>& v) {
    double worst = 0.0;
    for (double x : v) worst = std::max(worst, std::abs(x));
    return worst;
  };

  // damped Newton on the gauge-reduced system; the reduced Jacobian can be
  // rank deficient on higher-dimensional components, so use a rank-revealing
  // least-squares solve
  double best_res = max_norm(rhs(g, Configuration(th)));
  for (int iter = 0; iter < max_iter && best_res > newton_tol; ++iter) {
    const Configuration current(th);
    const Eigen::MatrixXd full = jacobian(g, current);
    const std::vector<double> fr = rhs(g, current);
    Eigen::MatrixXd reduced = full.block(1, 1, n - 1, n - 1);
    Eigen::VectorXd minus_f(n - 1);
    for (int j = 1; j < n; ++j) minus_f(j - 1) = -fr[static_cast<std::size_t>(j)];

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(reduced);
    cod.setThreshold(1e-10);
    const Eigen::VectorXd delta = cod.solve(minus_f);

    bool improved = false;
    for (double s = 1.0; s > 1.0 / 1024.0; s *= 0.5) {
      std::vector<double> cand = th;
      for (int j = 1; j < n; ++j)
        cand[static_cast<std::size_t>(j)] =
            reduce_angle(cand[static_cast<std::size_t>(j)] + s * delta(j - 1));
      gauge(cand);
      const double res = max_norm(rhs(g, Configuration(cand)));
      if (res < best_res) {
        th = std::move(cand);
        best_res = res;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }

  NewtonOutcome out;
  out.point = Configuration(th);
  out.residual = best_res;
  out.converged = best_res <= newton_tol;
  return out;
}

}  // namespace

SearchReport find_equilibria(const Graph& g, const std::vector<Configuration>& seeds,
                             double newton_tol, int max_iter) {
  if (g.vertex_count() < 2)
    throw std::invalid_argument("find_equilibria: need at least two vertices");
  SearchReport report;
  report.seeds_total = static_cast<int>(seeds.size());

  std::vector<NewtonOutcome> outcomes(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    outcomes[i] = refine_seed(g, seeds[i], newton_tol, max_iter);
  });

  for (auto& outcome : outcomes) {
    if (!outcome.converged) {
      ++report.failed;
      continue;
    }
    ++report.converged;
    bool duplicate = false;
    for (const Configuration& kept : report.equilibria) {
      if (torus_distance(kept, outcome.point) <= 1e-6) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) report.equilibria.push_back(std::move(outcome.point));
  }
  return report;
}

bool is_completely_degenerate(const Graph& g, const Configuration& c, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("is_completely_degenerate: tol must be positive");
  if (residual(g, c) > tol)
    throw std::invalid_argument("is_completely_degenerate: not an equilibrium within tol");
  const Eigen::MatrixXd m = jacobian(g, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff() <= tol;
}

Configuration EquilibriumComponent::sample_random(Rng& rng) const {
  std::vector<double> params(static_cast<std::size_t>(param_count));
  for (double& p : params) p = rng.next_angle();
  return sample(params);
}

namespace {

EquilibriumComponent make_component(
    std::string name, double energy, int n, int param_count,
    std::function<double(const Configuration&)> defect,
    std::function<Configuration(std::span<const double>)> sample,
    std::vector<std::vector<double>> tangents) {
  EquilibriumComponent comp;
  comp.name = std::move(name);
  comp.energy = energy;
  comp.n = n;
  comp.param_count = param_count;
  comp.defect = std::move(defect);
  comp.sample = std::move(sample);
  comp.tangents = std::move(tangents);
  return comp;
}

EquilibriumComponent synchronized_component(int n) {
  return make_component(
      "S", 0.0, n, 1,
      [n](const Configuration& c) {
        double worst = 0.0;
        for (int j = 1; j < n; ++j)
          worst = std::max(worst, circ0(c[static_cast<std::size_t>(j)] - c[0]));
        return worst;
      },
      [n](std::span<const double> p) {
        return Configuration(std::vector<double>(static_cast<std::size_t>(n), p[0]));
      },
      {std::vector<double>(static_cast<std::size_t>(n), 1.0)});
}

}  // namespace

std::vector<EquilibriumComponent> complete4_components() {
  std::vector<EquilibriumComponent> comps;
  comps.push_back(synchronized_component(4));

  // A_i: vertex i-1 antiphase to the other three
  for (int i = 0; i < 4; ++i) {
    comps.push_back(make_component(
        "A" + std::to_string(i + 1), 6.0, 4, 1,
        [i](const Configuration& c) {
          double worst = 0.0;
          for (int j = 0; j < 4; ++j)
            if (j != i)
              worst = std::max(worst, circ0(c[static_cast<std::size_t>(j)] -
                                            c[static_cast<std::size_t>(i)] - kPi));
          return worst;
        },
        [i](std::span<const double> p) {
          std::vector<double> th(4, p[0] + kPi);
          th[static_cast<std::size_t>(i)] = p[0];
          return Configuration(std::move(th));
        },
        {{1, 1, 1, 1}}));
  }

  // the three antipodal pairings (alpha, beta free)
  comps.push_back(make_component(
      "B1", 8.0, 4, 2,
      [](const Configuration& c) {
        return std::max(circ0(c[1] - c[0] - kPi), circ0(c[3] - c[2] - kPi));
      },
      [](std::span<const double> p) {
        return Configuration({p[0], p[0] + kPi, p[1], p[1] + kPi});
      },
      {{1, 1, 0, 0}, {0, 0, 1, 1}}));
  comps.push_back(make_component(
      "B2", 8.0, 4, 2,
      [](const Configuration& c) {
        return std::max(circ0(c[2] - c[0] - kPi), circ0(c[3] - c[1] - kPi));
      },
      [](std::span<const double> p) {
        return Configuration({p[0], p[1], p[0] + kPi, p[1] + kPi});
      },
      {{1, 0, 1, 0}, {0, 1, 0, 1}}));
  comps.push_back(make_component(
      "B3", 8.0, 4, 2,
      [](const Configuration& c) {
        return std::max(circ0(c[3] - c[0] - kPi), circ0(c[2] - c[1] - kPi));
      },
      [](std::span<const double> p) {
        return Configuration({p[0], p[1], p[1] + kPi, p[0] + kPi});
      },
      {{1, 0, 0, 1}, {0, 1, 1, 0}}));
  return comps;
}

std::vector<EquilibriumComponent> cycle4_components() {
  std::vector<EquilibriumComponent> comps;
  comps.push_back(synchronized_component(4));

  comps.push_back(make_component(
      "A5", 8.0, 4, 1,
      [](const Configuration& c) {
        return std::max({circ0(c[1] - c[0] - kPi), circ0(c[2] - c[0]),
                         circ0(c[3] - c[0] - kPi)});
      },
      [](std::span<const double> p) {
        return Configuration({p[0], p[0] + kPi, p[0], p[0] + kPi});
      },
      {{1, 1, 1, 1}}));

  comps.push_back(make_component(
      "B2", 4.0, 4, 2,
      [](const Configuration& c) {
        return std::max(circ0(c[2] - c[0] - kPi), circ0(c[3] - c[1] - kPi));
      },
      [](std::span<const double> p) {
        return Configuration({p[0], p[1], p[0] + kPi, p[1] + kPi});
      },
      {{1, 0, 1, 0}, {0, 1, 0, 1}}));

  // one side aligned-balanced, the other free: theta_3 = theta_1 + pi with
  // theta_0, theta_2 mirrored around theta_1 (and the relabeled twin)
  comps.push_back(make_component(
      "C1", 4.0, 4, 2,
      [](const Configuration& c) {
        return std::max(circ0(c[3] - c[1] - kPi), circ0(c[0] + c[2] - 2.0 * c[1]));
      },
      [](std::span<const double> p) {
        return Configuration({p[0] - p[1], p[0], p[0] + p[1], p[0] + kPi});
      },
      {{1, 1, 1, 1}, {-1, 0, 1, 0}}));
  comps.push_back(make_component(
      "C2", 4.0, 4, 2,
      [](const Configuration& c) {
        return std::max(circ0(c[2] - c[0] - kPi), circ0(c[1] + c[3] - 2.0 * c[0]));
      },
      [](std::span<const double> p) {
        return Configuration({p[0], p[0] + p[1], p[0] + kPi, p[0] - p[1]});
      },
      {{1, 1, 1, 1}, {0, 1, 0, -1}}));
  return comps;
}

std::optional<std::vector<EquilibriumComponent>> component_catalog(const GraphFamily& family) {
  if (family == complete(4)) return complete4_components();
  if (family == cycle(4)) return cycle4_components();
  return std::nullopt;
}

std::vector<Configuration> lattice_seeds(int n, int divisions, std::size_t max_count) {
  if (n < 1 || divisions < 1) throw std::invalid_argument("lattice_seeds: bad parameters");
  std::size_t total = 1;
  for (int j = 1; j < n; ++j) {
    total *= static_cast<std::size_t>(divisions);
    if (total > max_count)
      throw std::invalid_argument("lattice_seeds: divisions^(n-1) exceeds max_count");
  }
  std::vector<Configuration> seeds;
  seeds.reserve(total);
  const double step = kTwoPi / divisions;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<double> phases(static_cast<std::size_t>(n), 0.0);
    std::size_t rest = idx;
    for (int j = 1; j < n; ++j) {
      phases[static_cast<std::size_t>(j)] =
          step * static_cast<double>(rest % static_cast<std::size_t>(divisions));
      rest /= static_cast<std::size_t>(divisions);
    }
    seeds.emplace_back(std::move(phases));
  }
  return seeds;
}

std::vector<Configuration> random_seeds(int n, int count, Rng& rng) {
  std::vector<Configuration> seeds;
  seeds.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) seeds.push_back(random_configuration(n, rng));
  return seeds;
}

}  // namespace kura

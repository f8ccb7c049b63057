#include "kura/heteroclinic.hpp"

#include "kura/format.hpp"
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "kura/dynamics.hpp"
#include "kura/parallel.hpp"
#include "kura/version.hpp"

namespace kura {

std::optional<std::string> identify_component(
    const Configuration& c, const std::vector<EquilibriumComponent>& components,
    double tol) {
  const EquilibriumComponent* found = nullptr;
  for (const auto& comp : components) {
    if (comp.contains(c, tol)) {
      if (found) return std::nullopt;  // ambiguous
      found = &comp;
    }
  }
  if (!found) return std::nullopt;
  return found->name;
}

namespace {

struct ProbeJob {
  std::size_t component = 0;
  bool reversed = false;
  int trial = 0;
};

struct ProbeOutcome {
  enum class Kind { Arc, SelfReturn, Miss } kind = Kind::Miss;
  std::string source, target;
  Witness witness;
  ProbeMiss miss;
};

/// Orthonormal basis of the component's tangent space (plus nothing else);
/// random kicks are projected out of it.
std::vector<std::vector<double>> orthonormal_tangents(const EquilibriumComponent& comp) {
  std::vector<std::vector<double>> basis;
  for (const auto& t : comp.tangents) {
    std::vector<double> v = t;
    for (const auto& b : basis) {
      double dot = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * b[i];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * b[i];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 1e-12) {
      for (double& x : v) x /= norm;
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

void validate_components(const Graph& g,
                         const std::vector<EquilibriumComponent>& components,
                         std::uint64_t seed) {
  for (std::size_t ci = 0; ci < components.size(); ++ci) {
    const auto& comp = components[ci];
    if (comp.n != g.vertex_count())
      throw std::invalid_argument("probe: component " + comp.name +
                                  " does not match the graph size");
    for (int probe = 0; probe < 3; ++probe) {
      Rng rng = substream(seed, 0xabcdull, ci, static_cast<std::uint64_t>(probe));
      const Configuration member = comp.sample_random(rng);
      if (residual(g, member) > 1e-10)
        throw std::invalid_argument("probe: sampled member of " + comp.name +
                                    " is not an equilibrium");
      if (std::abs(energy(g, member) - comp.energy) > 1e-10)
        throw std::invalid_argument("probe: sampled member of " + comp.name +
                                    " has drifting energy");
      if (comp.defect(member) > 1e-10)
        throw std::invalid_argument("probe: sampled member of " + comp.name +
                                    " fails its own membership test");
    }
  }
}

}  // namespace

HeteroclinicDigraph probe(const Graph& g,
                          const std::vector<EquilibriumComponent>& components,
                          const ProbeOptions& options) {
  validate_components(g, components, options.seed);

  std::vector<std::vector<std::vector<double>>> tangent_bases;
  tangent_bases.reserve(components.size());
  for (const auto& comp : components) tangent_bases.push_back(orthonormal_tangents(comp));

  std::vector<ProbeJob> jobs;
  for (std::size_t ci = 0; ci < components.size(); ++ci)
    for (int rev = 0; rev < 2; ++rev)
      for (int trial = 0; trial < options.trials; ++trial)
        jobs.push_back({ci, rev == 1, trial});

  const int n = g.vertex_count();
  std::vector<ProbeOutcome> outcomes(jobs.size());

  parallel_for(jobs.size(), [&](std::size_t ji) {
    const ProbeJob& job = jobs[ji];
    const auto& comp = components[job.component];
    ProbeOutcome& out = outcomes[ji];

    Rng rng = substream(options.seed, job.component, job.reversed ? 1 : 0,
                        static_cast<std::uint64_t>(job.trial));
    const Configuration base_point = comp.sample_random(rng);

    double eps = options.perturb_eps;
    if (is_completely_degenerate(g, base_point, 1e-8)) eps = options.degenerate_eps;

    // random kick orthogonal to the component's tangent directions
    std::vector<double> kick(static_cast<std::size_t>(n));
    double norm = 0.0;
    for (int attempt = 0; attempt < 16 && norm < 1e-8; ++attempt) {
      for (double& x : kick) x = rng.next_normal();
      for (const auto& b : tangent_bases[job.component]) {
        double dot = 0.0;
        for (std::size_t i = 0; i < kick.size(); ++i) dot += kick[i] * b[i];
        for (std::size_t i = 0; i < kick.size(); ++i) kick[i] -= dot * b[i];
      }
      norm = 0.0;
      for (double x : kick) norm += x * x;
      norm = std::sqrt(norm);
    }
    for (double& x : kick) x *= eps / norm;

    std::vector<double> state(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < state.size(); ++i) state[i] = base_point[i] + kick[i];
    for (double& x : state) x = reduce_angle(x);

    Rk4Stepper stepper(g, options.dt,
                       job.reversed ? TimeDirection::Reversed : TimeDirection::Forward);
    const double ceiling = 2.0 * static_cast<double>(g.edge_count());
    const auto total_steps =
        static_cast<long long>(std::ceil(options.t_end / options.dt - 1e-12));

    double previous_energy = energy(g, state);
    bool monotone = true;
    bool converged = false;
    double final_residual = 0.0;
    double t = 0.0;

    for (long long step = 1; step <= total_steps; ++step) {
      const double pre_residual = stepper.step(state);
      t = static_cast<double>(step) * options.dt;
      const double e = energy(g, state);
      if (job.reversed ? e < previous_energy - options.energy_monotone_tol
                       : e > previous_energy + options.energy_monotone_tol)
        monotone = false;
      previous_energy = e;
      if (pre_residual < options.endpoint_residual) {
        converged = true;
        final_residual = pre_residual;
        break;
      }
      if (job.reversed && e > ceiling) break;
    }

    const Configuration endpoint(state);
    auto miss = [&](const std::string& reason) {
      out.kind = ProbeOutcome::Kind::Miss;
      out.miss = ProbeMiss{comp.name,     job.reversed,
                           job.trial,     reason,
                           t,             residual(g, endpoint),
                           endpoint.phases()};
    };

    if (!converged) {
      miss("no_convergence");
      return;
    }
    if (!monotone) {
      miss("energy_not_monotone");
      return;
    }

    const auto label = identify_component(endpoint, components, options.membership_tol);
    if (!label) {
      miss("unidentified_endpoint");
      return;
    }
    if (*label == comp.name) {
      out.kind = ProbeOutcome::Kind::SelfReturn;
      return;
    }

    const auto& target =
        *std::find_if(components.begin(), components.end(),
                      [&](const auto& c2) { return c2.name == *label; });
    const std::string source = job.reversed ? *label : comp.name;
    const std::string sink = job.reversed ? comp.name : *label;
    const double source_energy = job.reversed ? target.energy : comp.energy;
    const double sink_energy = job.reversed ? comp.energy : target.energy;
    if (source_energy <= sink_energy + 1e-9) {
      miss("energy_order_violated:" + source + "->" + sink);
      return;
    }

    out.kind = ProbeOutcome::Kind::Arc;
    out.source = source;
    out.target = sink;
    out.witness = Witness{comp.name,      job.reversed,         job.trial, eps,
                          kick,           t,                    final_residual,
                          target.defect(endpoint)};
  });

  // deterministic merge, independent of scheduling
  HeteroclinicDigraph digraph;
  for (const auto& comp : components) digraph.nodes.push_back({comp.name, comp.energy});
  std::sort(digraph.nodes.begin(), digraph.nodes.end(), [](const auto& a, const auto& b) {
    return a.energy != b.energy ? a.energy > b.energy : a.name < b.name;
  });

  std::map<std::pair<std::string, std::string>, HeteroclinicArc> arcs;
  for (std::size_t ji = 0; ji < jobs.size(); ++ji) {
    const ProbeOutcome& out = outcomes[ji];
    switch (out.kind) {
      case ProbeOutcome::Kind::SelfReturn:
        ++digraph.self_returns;
        break;
      case ProbeOutcome::Kind::Miss:
        digraph.misses.push_back(out.miss);
        break;
      case ProbeOutcome::Kind::Arc: {
        auto [it, inserted] = arcs.try_emplace({out.source, out.target});
        HeteroclinicArc& arc = it->second;
        if (inserted) {
          arc.source = out.source;
          arc.target = out.target;
          const auto energy_of = [&](const std::string& name) {
            for (const auto& node : digraph.nodes)
              if (node.name == name) return node.energy;
            return 0.0;
          };
          arc.source_energy = energy_of(out.source);
          arc.target_energy = energy_of(out.target);
          arc.best = out.witness;
        } else if (out.witness.final_defect < arc.best.final_defect) {
          arc.best = out.witness;
        }
        ++arc.witness_count;
        break;
      }
    }
  }

  const auto node_rank = [&](const std::string& name) {
    for (std::size_t i = 0; i < digraph.nodes.size(); ++i)
      if (digraph.nodes[i].name == name) return i;
    return digraph.nodes.size();
  };
  for (auto& [key, arc] : arcs) digraph.arcs.push_back(std::move(arc));
  std::sort(digraph.arcs.begin(), digraph.arcs.end(), [&](const auto& a, const auto& b) {
    const auto ra = std::make_pair(node_rank(a.source), node_rank(a.target));
    const auto rb = std::make_pair(node_rank(b.source), node_rank(b.target));
    return ra < rb;
  });
  return digraph;
}

std::string export_dot(const HeteroclinicDigraph& h, const std::string& meta) {
  std::ostringstream out;
  out << "digraph heteroclinic {\n";
  out << "  // " << (meta.empty() ? std::string("kura ") + kVersion : meta) << "\n";
  out << "  rankdir=TB;\n";
  for (const auto& node : h.nodes)
    out << "  \"" << node.name << "\" [label=\"" << node.name
        << "\\nE=" << format_double(node.energy) << "\"];\n";
  for (const auto& arc : h.arcs)
    out << "  \"" << arc.source << "\" -> \"" << arc.target << "\" [label=\""
        << arc.witness_count << "\"];\n";
  out << "}\n";
  return out.str();
}

namespace {

void json_escape_into(std::ostringstream& out, const std::string& s) {
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out << '\\';
    out << ch;
  }
}

void witness_json(std::ostringstream& out, const Witness& w) {
  out << "{\"from\":\"";
  json_escape_into(out, w.from_component);
  out << "\",\"reversed\":" << (w.reversed ? "true" : "false")
      << ",\"trial\":" << w.trial << ",\"eps\":" << format_double(w.eps)
      << ",\"t_final\":" << format_double(w.t_final)
      << ",\"final_residual\":" << format_double(w.final_residual)
      << ",\"final_defect\":" << format_double(w.final_defect) << ",\"perturbation\":[";
  for (std::size_t i = 0; i < w.perturbation.size(); ++i) {
    if (i) out << ',';
    out << format_double(w.perturbation[i]);
  }
  out << "]}";
}

}  // namespace

std::string digraph_to_json(const HeteroclinicDigraph& h, const std::string& config_echo) {
  std::ostringstream out;
  out << "{\"tool\":\"kura\",\"version\":\"" << kVersion << "\"";
  if (!config_echo.empty()) {
    out << ",\"config\":\"";
    json_escape_into(out, config_echo);
    out << "\"";
  }
  out << ",\"nodes\":[";
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    if (i) out << ',';
    out << "{\"name\":\"";
    json_escape_into(out, h.nodes[i].name);
    out << "\",\"energy\":" << format_double(h.nodes[i].energy) << "}";
  }
  out << "],\"arcs\":[";
  for (std::size_t i = 0; i < h.arcs.size(); ++i) {
    const auto& arc = h.arcs[i];
    if (i) out << ',';
    out << "{\"source\":\"";
    json_escape_into(out, arc.source);
    out << "\",\"target\":\"";
    json_escape_into(out, arc.target);
    out << "\",\"source_energy\":" << format_double(arc.source_energy)
        << ",\"target_energy\":" << format_double(arc.target_energy)
        << ",\"witnesses\":" << arc.witness_count << ",\"best\":";
    witness_json(out, arc.best);
    out << "}";
  }
  out << "],\"self_returns\":" << h.self_returns
      << ",\"miss_count\":" << h.misses.size() << "}";
  return out.str();
}

std::string misses_to_json(const HeteroclinicDigraph& h) {
  std::ostringstream out;
  out << "{\"tool\":\"kura\",\"version\":\"" << kVersion << "\",\"misses\":[";
  for (std::size_t i = 0; i < h.misses.size(); ++i) {
    const auto& miss = h.misses[i];
    if (i) out << ',';
    out << "{\"component\":\"";
    json_escape_into(out, miss.component);
    out << "\",\"reversed\":" << (miss.reversed ? "true" : "false")
        << ",\"trial\":" << miss.trial << ",\"reason\":\"";
    json_escape_into(out, miss.reason);
    out << "\",\"t_final\":" << format_double(miss.t_final)
        << ",\"final_residual\":" << format_double(miss.final_residual)
        << ",\"final_phases\":[";
    for (std::size_t j = 0; j < miss.final_phases.size(); ++j) {
      if (j) out << ',';
      out << format_double(miss.final_phases[j]);
    }
    out << "]}";
  }
  out << "]}";
  return out.str();
}

}  // namespace kura

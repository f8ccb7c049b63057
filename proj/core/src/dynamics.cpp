#include "kura/dynamics.hpp"

#include "kura/format.hpp"
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace kura {

namespace {

void require_match(const Graph& g, const Configuration& c, const char* what) {
  if (static_cast<std::size_t>(g.vertex_count()) != c.size())
    throw std::invalid_argument(std::string(what) + ": configuration length " +
                                std::to_string(c.size()) + " != vertex count " +
                                std::to_string(g.vertex_count()));
}

void rhs_into(const Graph& g, const std::vector<double>& th, std::vector<double>& out) {
  out.assign(th.size(), 0.0);
  for (const auto& [u, v] : g.edges()) {
    const double s = std::sin(th[static_cast<std::size_t>(v)] -
                              th[static_cast<std::size_t>(u)]);
    out[static_cast<std::size_t>(u)] += s;
    out[static_cast<std::size_t>(v)] -= s;
  }
}

}  // namespace

std::vector<double> rhs(const Graph& g, const Configuration& c) {
  require_match(g, c, "rhs");
  std::vector<double> out;
  rhs_into(g, c.phases(), out);
  return out;
}

double energy(const Graph& g, const Configuration& c) {
  require_match(g, c, "energy");
  return energy(g, c.phases());
}

double energy(const Graph& g, const std::vector<double>& phases) {
  double total = 0.0;
  for (const auto& [u, v] : g.edges())
    total += 1.0 - std::cos(phases[static_cast<std::size_t>(u)] -
                            phases[static_cast<std::size_t>(v)]);
  return total;
}

std::vector<double> energy_gradient(const Graph& g, const Configuration& c) {
  require_match(g, c, "energy_gradient");
  // Per-vertex form of dE/dtheta_j; rhs accumulates per edge, so the identity
  // gradient == -rhs is checked across two different summation orders.
  const int n = g.vertex_count();
  std::vector<double> grad(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int k : g.neighbors(j))
      acc += std::sin(c[static_cast<std::size_t>(j)] - c[static_cast<std::size_t>(k)]);
    grad[static_cast<std::size_t>(j)] = acc;
  }
  return grad;
}

double residual(const Graph& g, const Configuration& c) {
  require_match(g, c, "residual");
  std::vector<double> f;
  rhs_into(g, c.phases(), f);
  double worst = 0.0;
  for (double x : f) worst = std::max(worst, std::abs(x));
  return worst;
}

Rk4Stepper::Rk4Stepper(const Graph& g, double dt, TimeDirection direction)
    : graph_(g),
      dt_(dt),
      sign_(direction == TimeDirection::Forward ? 1.0 : -1.0),
      k1_(static_cast<std::size_t>(g.vertex_count())),
      k2_(k1_.size()),
      k3_(k1_.size()),
      k4_(k1_.size()),
      tmp_(k1_.size()) {
  if (dt <= 0.0) throw std::invalid_argument("rk4: dt must be positive");
}

void Rk4Stepper::eval(const std::vector<double>& state, std::vector<double>& out) const {
  rhs_into(graph_, state, out);
  if (sign_ < 0.0)
    for (double& x : out) x = -x;
}

double Rk4Stepper::step(std::vector<double>& state) {
  const std::size_t n = state.size();
  eval(state, k1_);
  double res = 0.0;
  for (double x : k1_) res = std::max(res, std::abs(x));

  for (std::size_t i = 0; i < n; ++i) tmp_[i] = state[i] + 0.5 * dt_ * k1_[i];
  eval(tmp_, k2_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = state[i] + 0.5 * dt_ * k2_[i];
  eval(tmp_, k3_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = state[i] + dt_ * k3_[i];
  eval(tmp_, k4_);
  for (std::size_t i = 0; i < n; ++i) {
    state[i] = reduce_angle(state[i] +
                            dt_ / 6.0 * (k1_[i] + 2.0 * (k2_[i] + k3_[i]) + k4_[i]));
    if (!std::isfinite(state[i]))
      throw std::runtime_error("integrate: state became non-finite");
  }
  return res;
}

TrajectoryRecord integrate(const Graph& g, const Configuration& c0,
                           const IntegrationOptions& options) {
  require_match(g, c0, "integrate");
  if (options.dt <= 0.0 || options.t_end <= 0.0)
    throw std::invalid_argument("integrate: dt and t_end must be positive");
  const bool reversed = options.direction == TimeDirection::Reversed;
  const double ceiling = options.energy_ceiling.value_or(
      reversed ? 2.0 * static_cast<double>(g.edge_count())
               : std::numeric_limits<double>::infinity());
  const bool check_ceiling = std::isfinite(ceiling);

  TrajectoryRecord record;
  std::vector<double> state = c0.phases();
  Rk4Stepper stepper(g, options.dt, options.direction);
  const int stride = std::max(1, options.record_stride);
  const auto total_steps =
      static_cast<long long>(std::ceil(options.t_end / options.dt - 1e-12));

  auto record_state = [&](double t) {
    Configuration snapshot(state);
    record.times.push_back(t);
    record.energies.push_back(energy(g, snapshot));
    record.states.push_back(std::move(snapshot));
  };

  record_state(0.0);
  record.stop_reason = StopReason::TimeLimit;
  for (long long step = 1; step <= total_steps; ++step) {
    const double pre_residual = stepper.step(state);
    const double t = static_cast<double>(step) * options.dt;
    const bool last = step == total_steps;
    bool stop = false;

    if (options.stop_residual > 0.0 && pre_residual < options.stop_residual) {
      record.stop_reason = StopReason::ResidualConverged;
      stop = true;
    } else if (check_ceiling && energy(g, state) > ceiling) {
      record.stop_reason = StopReason::EnergyCeiling;
      stop = true;
    }

    if (stop || last || step % stride == 0) record_state(t);
    if (stop) break;
  }
  return record;
}

TrajectoryRecord integrate(const Graph& g, const Configuration& c0, double dt,
                           double t_end, TimeDirection direction) {
  IntegrationOptions options;
  options.dt = dt;
  options.t_end = t_end;
  options.direction = direction;
  return integrate(g, c0, options);
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record,
                          const std::string& meta) {
  if (!meta.empty()) out << "# " << meta << '\n';
  const std::size_t n = record.states.empty() ? 0 : record.states.front().size();
  out << "t";
  for (std::size_t j = 0; j < n; ++j) out << ",theta_" << j;
  out << ",E\n";
  for (std::size_t i = 0; i < record.times.size(); ++i) {
    out << format_double(record.times[i]);
    for (std::size_t j = 0; j < n; ++j) out << ',' << format_double(record.states[i][j]);
    out << ',' << format_double(record.energies[i]) << '\n';
  }
}

}  // namespace kura

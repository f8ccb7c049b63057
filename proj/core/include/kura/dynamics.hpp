#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "kura/graph.hpp"
#include "kura/phase.hpp"

namespace kura {

/// Right-hand side: component j is sum over neighbors of sin(theta_k - theta_j).
std::vector<double> rhs(const Graph& g, const Configuration& c);

/// Energy sum over edges of (1 - cos(theta_j - theta_k)), each edge once.
double energy(const Graph& g, const Configuration& c);
/// Raw-buffer overload for tight stepping loops; no validation.
double energy(const Graph& g, const std::vector<double>& phases);

/// Analytic gradient of the energy; equals -rhs identically.
std::vector<double> energy_gradient(const Graph& g, const Configuration& c);

/// Max-norm of rhs; zero exactly at equilibria.
double residual(const Graph& g, const Configuration& c);

enum class TimeDirection { Forward, Reversed };

struct IntegrationOptions {
  double dt = 1e-3;
  double t_end = 200.0;
  TimeDirection direction = TimeDirection::Forward;
  /// Record every k-th step (first and last states are always recorded).
  int record_stride = 1;
  /// Stop early once residual drops below this; 0 disables the check.
  double stop_residual = 0.0;
  /// Reversed-time runs abort once the energy exceeds this; defaults to
  /// 2 * edge_count, the global maximum of the energy.
  std::optional<double> energy_ceiling;
};

enum class StopReason { TimeLimit, ResidualConverged, EnergyCeiling };

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<Configuration> states;
  std::vector<double> energies;
  StopReason stop_reason = StopReason::TimeLimit;
};

/// Classical fixed-step RK4 on +-rhs; states re-reduced mod 2pi each step.
/// Throws std::runtime_error if the state becomes non-finite.
TrajectoryRecord integrate(const Graph& g, const Configuration& c0,
                           const IntegrationOptions& options = {});
TrajectoryRecord integrate(const Graph& g, const Configuration& c0, double dt,
                           double t_end, TimeDirection direction);

/// CSV columns: t, theta_0..theta_{n-1}, E.
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record,
                          const std::string& meta = {});

/// One in-place RK4 step of sign*rhs; returns the max-norm residual of the
/// state *before* the step (free from the first stage). Scratch buffers keep
/// repeated stepping allocation-free.
class Rk4Stepper {
 public:
  Rk4Stepper(const Graph& g, double dt, TimeDirection direction);
  double step(std::vector<double>& state);

 private:
  void eval(const std::vector<double>& state, std::vector<double>& out) const;

  const Graph& graph_;
  double dt_;
  double sign_;
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace kura

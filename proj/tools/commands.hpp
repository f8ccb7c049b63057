#pragma once

#include <cstdint>
#include <string>

namespace kura::cli {

struct RunConfig {
  std::string command;  // gen | verify | scan | equilibria | hetero
  std::string graph_spec;
  std::string grid_spec = "0:2pi:256";
  double dt = 0.0;      // 0 = command default
  double t_end = 0.0;   // 0 = command default
  double tol = -1.0;    // <0 = command default
  std::uint64_t seed = 0;
  int trials = 0;       // 0 = command default
  std::string out;      // empty = stdout
  std::string format;   // empty = command default
  bool experimental = false;
};

/// Executes one command; returns the process exit status (0 ok, 1 failed
/// checks, 2 invalid input). Invalid input raises std::invalid_argument,
/// which main() turns into a machine-readable error record.
int run(const RunConfig& config);

}  // namespace kura::cli

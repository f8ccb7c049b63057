#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kura/graph.hpp"
#include "kura/phase.hpp"
#include "kura/torus.hpp"

namespace kura {

/// Jacobian of rhs at c: off-diagonal (j,k) = a_jk cos(theta_k - theta_j),
/// diagonal minus the row sum. Assembled symmetrically (one cosine per edge),
/// so the matrix is exactly symmetric and rows sum to ~machine zero.
Eigen::MatrixXd jacobian(const Graph& g, const Configuration& c);

struct SpectrumReport {
  std::vector<double> eigenvalues;  // sorted ascending
  int zero_count = 0;               // |lambda| <= zero_tol
  int positive_count = 0;           // lambda > zero_tol
  double zero_tol = 0.0;
};

/// Auto zero tolerance: 1e-8 * max(1, spectral radius).
double default_zero_tol(double spectral_radius);

/// Full symmetric eigensolve (dense, backward stable). Pass zero_tol < 0 to
/// use the auto tolerance. Throws std::invalid_argument if the input deviates
/// from symmetry by more than 1e-12.
SpectrumReport spectrum(const Eigen::MatrixXd& m, double zero_tol = -1.0);

/// Closed-form eigenvalues of a real symmetric circulant matrix from its
/// first row: lambda_m = sum_k row_k cos(2 pi m k / n), sorted ascending.
/// Independent cross-check for spectrum().
std::vector<double> circulant_eigenvalues(std::span<const double> first_row);

struct TransversallyStable {
  int dim;  // zero multiplicity = manifold dimension
};
struct Unstable {
  int positive_count;
};
struct CompletelyDegenerate {};

using StabilityClass = std::variant<TransversallyStable, Unstable, CompletelyDegenerate>;

std::string to_string(const StabilityClass& cls);

/// Eigenvalue counting against the expected manifold dimension. Throws
/// std::runtime_error when zero_count < 1 (every Jacobian here has the
/// phase-shift null direction; its absence signals a numerical failure).
StabilityClass classify(const SpectrumReport& report, int expected_manifold_dim);

struct ScanPoint {
  std::vector<double> shifts;
  SpectrumReport report;
  StabilityClass cls;
};

/// One spectrum per shift tuple of the torus family; grid points are
/// independent and evaluated in parallel.
std::vector<ScanPoint> torus_scan(const Graph& g, const TorusFamily& family,
                                  const std::vector<std::vector<double>>& shift_grid,
                                  double zero_tol = -1.0);

/// CSV columns: shift_1..shift_d, lambda_0..lambda_{n-1}, zero_count, class.
/// meta, when nonempty, is emitted as a leading "# ..." comment line.
void write_scan_csv(std::ostream& out, const std::vector<ScanPoint>& scan,
                    const std::string& meta = {});

}  // namespace kura

#include "kura/spectral.hpp"

#include "kura/format.hpp"
#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "kura/parallel.hpp"

namespace kura {

Eigen::MatrixXd jacobian(const Graph& g, const Configuration& c) {
  if (static_cast<std::size_t>(g.vertex_count()) != c.size())
    throw std::invalid_argument("jacobian: configuration length mismatch");
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    const double w = std::cos(c[static_cast<std::size_t>(v)] -
                              c[static_cast<std::size_t>(u)]);
    m(u, v) += w;
    m(v, u) += w;
    m(u, u) -= w;
    m(v, v) -= w;
  }
  return m;
}

double default_zero_tol(double spectral_radius) {
  return 1e-8 * std::max(1.0, spectral_radius);
}

SpectrumReport spectrum(const Eigen::MatrixXd& m, double zero_tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("spectrum: matrix not square");
  const double asymmetry = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-12)
    throw std::invalid_argument("spectrum: matrix asymmetric by " +
                                format_double(asymmetry));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectrum: eigensolver failed to converge");

  SpectrumReport report;
  report.eigenvalues.assign(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + m.rows());
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end());

  double radius = 0.0;
  for (double ev : report.eigenvalues) radius = std::max(radius, std::abs(ev));
  report.zero_tol = zero_tol < 0.0 ? default_zero_tol(radius) : zero_tol;
  for (double ev : report.eigenvalues) {
    if (std::abs(ev) <= report.zero_tol)
      ++report.zero_count;
    else if (ev > report.zero_tol)
      ++report.positive_count;
  }
  return report;
}

std::vector<double> circulant_eigenvalues(std::span<const double> first_row) {
  if (first_row.empty())
    throw std::invalid_argument("circulant_eigenvalues: empty row");
  const std::size_t n = first_row.size();
  std::vector<double> eigenvalues(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      acc += first_row[k] * std::cos(kTwoPi * static_cast<double>(m * k) /
                                     static_cast<double>(n));
    eigenvalues[m] = acc;
  }
  std::sort(eigenvalues.begin(), eigenvalues.end());
  return eigenvalues;
}

std::string to_string(const StabilityClass& cls) {
  if (std::holds_alternative<CompletelyDegenerate>(cls)) return "completely_degenerate";
  if (const auto* stable = std::get_if<TransversallyStable>(&cls))
    return "transversally_stable(" + std::to_string(stable->dim) + ")";
  return "unstable(" + std::to_string(std::get<Unstable>(cls).positive_count) + ")";
}

StabilityClass classify(const SpectrumReport& report, int expected_manifold_dim) {
  if (expected_manifold_dim < 1)
    throw std::invalid_argument(
        "classify: expected manifold dimension must be >= 1 (the phase-shift "
        "orbit always contributes one)");
  if (report.zero_count < 1)
    throw std::runtime_error(
        "classify: no zero eigenvalue found; the phase-shift direction "
        "guarantees one, so this signals a numerical failure");
  const int n = static_cast<int>(report.eigenvalues.size());
  if (report.zero_count == n) return CompletelyDegenerate{};
  if (report.zero_count == expected_manifold_dim && report.positive_count == 0)
    return TransversallyStable{expected_manifold_dim};
  return Unstable{report.positive_count};
}

std::vector<ScanPoint> torus_scan(const Graph& g, const TorusFamily& family,
                                  const std::vector<std::vector<double>>& shift_grid,
                                  double zero_tol) {
  const int d = family.partition.part_count();
  std::vector<ScanPoint> scan(shift_grid.size());
  parallel_for(shift_grid.size(), [&](std::size_t i) {
    const auto& shifts = shift_grid[i];
    const Configuration c = build_torus_config(family, shifts);
    ScanPoint& point = scan[i];
    point.shifts = shifts;
    point.report = spectrum(jacobian(g, c), zero_tol);
    point.cls = classify(point.report, d);
  });
  return scan;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanPoint>& scan,
                    const std::string& meta) {
  if (!meta.empty()) out << "# " << meta << '\n';
  if (scan.empty()) return;
  const std::size_t d = scan.front().shifts.size();
  const std::size_t n = scan.front().report.eigenvalues.size();
  for (std::size_t p = 0; p < d; ++p) out << "shift_" << (p + 1) << ',';
  for (std::size_t j = 0; j < n; ++j) out << "lambda_" << j << ',';
  out << "zero_count,class\n";
  for (const ScanPoint& point : scan) {
    for (double s : point.shifts) out << format_double(s) << ',';
    for (double ev : point.report.eigenvalues) out << format_double(ev) << ',';
    out << point.report.zero_count << ',' << to_string(point.cls) << '\n';
  }
}

}  // namespace kura

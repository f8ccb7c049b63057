#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "kura/rng.hpp"

namespace kura {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to [0, 2pi).
double reduce_angle(double x);

/// Distance on the circle, in [0, pi].
double circular_distance(double a, double b);

/// Phase vector on the n-torus; every entry is kept reduced to [0, 2pi).
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<double> phases);

  std::size_t size() const { return phases_.size(); }
  double operator[](std::size_t j) const { return phases_[j]; }
  const std::vector<double>& phases() const { return phases_; }

  /// Every phase shifted by alpha (mod 2pi).
  Configuration shifted(double alpha) const;

 private:
  std::vector<double> phases_;
};

/// Sum of unit vectors e^{i theta_k} over the subset.
std::complex<double> order_parameter(const Configuration& c, std::span<const int> subset);

/// |sum e^{i theta_k}| <= tol over a nonempty subset.
bool is_balanced(const Configuration& c, std::span<const int> subset, double tol = 1e-8);
bool is_balanced(const Configuration& c, double tol = 1e-8);  // full vertex set

/// Every pairwise difference within tol of 0 or pi (mod 2pi).
bool is_aligned(const Configuration& c, std::span<const int> subset, double tol = 1e-8);
bool is_aligned(const Configuration& c, double tol = 1e-8);

/// Phases (2 k pi / n + alpha) for k = 1..n.
Configuration splay(int n, double alpha = 0.0);

/// Gauge fix: subtract the first phase, so the result starts at 0.
Configuration canonicalize(const Configuration& c);

/// min over s of max_j circular_distance(a_j + s, b_j): zero exactly on
/// phase-shift orbits. Computed in closed form (circular 1-center).
double torus_distance(const Configuration& a, const Configuration& b);

/// Partial sums u_m = sum_{k<=m} e^{i theta_k}; unit edge lengths, closes at
/// the origin exactly when the configuration is balanced.
struct PolygonLinkage {
  std::vector<std::array<double, 2>> points;  // u_1..u_n
  double closure_defect = 0.0;                // |u_n|

  bool closed(double tol = 1e-8) const { return closure_defect <= tol; }
};

PolygonLinkage linkage(const Configuration& c);

/// Rank of the 2 x n differential of (sum cos, sum sin) at a balanced
/// configuration: 2 certifies local dimension n-2, <= 1 flags a singular
/// point. Throws if c is not balanced within tol.
int balanced_tangent_rank(const Configuration& c, double tol = 1e-8);

Configuration random_configuration(int n, Rng& rng);

/// Random point on the balanced set via Gauss-Newton projection of a random
/// start. Throws after too many failed restarts (n >= 2 required).
Configuration random_balanced(int n, Rng& rng, double tol = 1e-12);

}  // namespace kura

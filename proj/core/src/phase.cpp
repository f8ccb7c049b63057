#include "kura/phase.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kura {

double reduce_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;  // rounding at the seam
  return r;
}

double circular_distance(double a, double b) {
  const double d = reduce_angle(a - b);
  return std::min(d, kTwoPi - d);
}

Configuration::Configuration(std::vector<double> phases) : phases_(std::move(phases)) {
  for (double& p : phases_) {
    if (!std::isfinite(p)) throw std::invalid_argument("configuration: non-finite phase");
    p = reduce_angle(p);
  }
}

Configuration Configuration::shifted(double alpha) const {
  std::vector<double> out(phases_.size());
  for (std::size_t j = 0; j < phases_.size(); ++j) out[j] = phases_[j] + alpha;
  return Configuration(std::move(out));
}

namespace {

void require_subset(const Configuration& c, std::span<const int> subset) {
  if (subset.empty()) throw std::invalid_argument("empty vertex subset");
  for (int k : subset)
    if (k < 0 || static_cast<std::size_t>(k) >= c.size())
      throw std::out_of_range("subset vertex " + std::to_string(k) + " out of range");
}

std::vector<int> full_set(const Configuration& c) {
  std::vector<int> all(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) all[j] = static_cast<int>(j);
  return all;
}

}  // namespace

std::complex<double> order_parameter(const Configuration& c, std::span<const int> subset) {
  require_subset(c, subset);
  double re = 0.0, im = 0.0;
  for (int k : subset) {
    re += std::cos(c[static_cast<std::size_t>(k)]);
    im += std::sin(c[static_cast<std::size_t>(k)]);
  }
  return {re, im};
}

bool is_balanced(const Configuration& c, std::span<const int> subset, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("is_balanced: tol must be positive");
  return std::abs(order_parameter(c, subset)) <= tol;
}

bool is_balanced(const Configuration& c, double tol) {
  const auto all = full_set(c);
  return is_balanced(c, all, tol);
}

bool is_aligned(const Configuration& c, std::span<const int> subset, double tol) {
  require_subset(c, subset);
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      const double d = circular_distance(c[static_cast<std::size_t>(subset[a])],
                                         c[static_cast<std::size_t>(subset[b])]);
      if (std::min(d, std::abs(d - std::numbers::pi)) > tol) return false;
    }
  }
  return true;
}

bool is_aligned(const Configuration& c, double tol) {
  const auto all = full_set(c);
  return is_aligned(c, all, tol);
}

Configuration splay(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("splay: n must be positive");
  std::vector<double> phases(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k)
    phases[static_cast<std::size_t>(k - 1)] = 2.0 * std::numbers::pi * k / n + alpha;
  return Configuration(std::move(phases));
}

Configuration canonicalize(const Configuration& c) {
  if (c.size() == 0) return c;
  return c.shifted(-c[0]);
}

double torus_distance(const Configuration& a, const Configuration& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("torus_distance: length mismatch");
  const std::size_t n = a.size();
  if (n == 0) return 0.0;

  // Componentwise distance after shift s is circular_distance(s, b_j - a_j),
  // so the minimal max-distance is the circular 1-center of the offsets:
  // place s at the midpoint of the arc spanned by them, i.e. opposite the
  // largest gap.
  std::vector<double> offsets(n);
  for (std::size_t j = 0; j < n; ++j) offsets[j] = reduce_angle(b[j] - a[j]);
  std::sort(offsets.begin(), offsets.end());

  double max_gap = offsets.front() + kTwoPi - offsets.back();
  for (std::size_t j = 1; j < n; ++j) max_gap = std::max(max_gap, offsets[j] - offsets[j - 1]);
  return (kTwoPi - max_gap) / 2.0;
}

PolygonLinkage linkage(const Configuration& c) {
  PolygonLinkage poly;
  poly.points.reserve(c.size());
  double x = 0.0, y = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    x += std::cos(c[k]);
    y += std::sin(c[k]);
    poly.points.push_back({x, y});
  }
  poly.closure_defect = std::hypot(x, y);
  return poly;
}

int balanced_tangent_rank(const Configuration& c, double tol) {
  if (!is_balanced(c, tol))
    throw std::invalid_argument("balanced_tangent_rank: configuration is not balanced");
  const auto n = static_cast<Eigen::Index>(c.size());
  Eigen::MatrixXd differential(2, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    differential(0, k) = -std::sin(c[static_cast<std::size_t>(k)]);
    differential(1, k) = std::cos(c[static_cast<std::size_t>(k)]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(differential);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-8 * std::max(1.0, sv(0));
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

Configuration random_configuration(int n, Rng& rng) {
  if (n < 0) throw std::invalid_argument("random_configuration: negative n");
  std::vector<double> phases(static_cast<std::size_t>(n));
  for (double& p : phases) p = rng.next_angle();
  return Configuration(std::move(phases));
}

Configuration random_balanced(int n, Rng& rng, double tol) {
  if (n < 2) throw std::invalid_argument("random_balanced: need n >= 2");
  for (int restart = 0; restart < 64; ++restart) {
    std::vector<double> th(static_cast<std::size_t>(n));
    for (double& p : th) p = rng.next_angle();
    // Gauss-Newton on F = (sum cos, sum sin)
    for (int iter = 0; iter < 100; ++iter) {
      double fc = 0.0, fs = 0.0;
      for (double p : th) {
        fc += std::cos(p);
        fs += std::sin(p);
      }
      if (std::hypot(fc, fs) <= tol) return Configuration(std::move(th));
      // J J^T for rows (-sin), (cos)
      double a = 0.0, b = 0.0, d = 0.0;
      for (double p : th) {
        const double s = std::sin(p), co = std::cos(p);
        a += s * s;
        b += -s * co;
        d += co * co;
      }
      const double det = a * d - b * b;
      if (std::abs(det) < 1e-12) break;  // near-aligned start; resample
      const double y0 = (d * fc - b * fs) / det;
      const double y1 = (-b * fc + a * fs) / det;
      for (double& p : th) {
        const double s = std::sin(p), co = std::cos(p);
        p = reduce_angle(p - (-s * y0 + co * y1));
      }
    }
  }
  throw std::runtime_error("random_balanced: projection failed to converge");
}

}  // namespace kura

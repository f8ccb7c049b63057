#pragma once

#include <string>
#include <vector>

namespace kura::cli {

/// Angle literal: a plain double, or a pi expression like "pi", "2pi",
/// "0.5pi", "pi/2", "-pi/3", "3pi/4".
double parse_angle(const std::string& token);

struct GridSpec {
  double start = 0.0;
  double end = 0.0;
  int count = 0;
};

/// "start:end:count" with angle literals; yields the half-open grid
/// start + i*(end-start)/count for i = 0..count-1.
GridSpec parse_grid(const std::string& spec);
std::vector<double> grid_points(const GridSpec& grid);

}  // namespace kura::cli

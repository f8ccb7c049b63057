#include "cli_util.hpp"

#include <numbers>
#include <stdexcept>

namespace kura::cli {

namespace {

double parse_number(const std::string& text, const std::string& whole) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad angle literal '" + whole + "'");
  }
}

}  // namespace

double parse_angle(const std::string& token) {
  std::string s;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty angle literal");

  const std::size_t pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) return parse_number(s, token);

  double coefficient = 1.0;
  const std::string head = s.substr(0, pi_pos);
  if (head == "-")
    coefficient = -1.0;
  else if (head == "+" || head.empty())
    coefficient = 1.0;
  else
    coefficient = parse_number(head, token);

  double divisor = 1.0;
  const std::string tail = s.substr(pi_pos + 2);
  if (!tail.empty()) {
    if (tail.front() != '/' || tail.size() < 2)
      throw std::invalid_argument("bad angle literal '" + token + "'");
    divisor = parse_number(tail.substr(1), token);
    if (divisor == 0.0) throw std::invalid_argument("division by zero in '" + token + "'");
  }
  return coefficient * std::numbers::pi / divisor;
}

GridSpec parse_grid(const std::string& spec) {
  const std::size_t first = spec.find(':');
  const std::size_t second = first == std::string::npos ? std::string::npos
                                                        : spec.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw std::invalid_argument("grid spec must be start:end:count, got '" + spec + "'");
  GridSpec grid;
  grid.start = parse_angle(spec.substr(0, first));
  grid.end = parse_angle(spec.substr(first + 1, second - first - 1));
  const std::string count_text = spec.substr(second + 1);
  try {
    std::size_t used = 0;
    grid.count = std::stoi(count_text, &used);
    if (used != count_text.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad grid count '" + count_text + "'");
  }
  if (grid.count < 1) throw std::invalid_argument("grid count must be >= 1");
  return grid;
}

std::vector<double> grid_points(const GridSpec& grid) {
  std::vector<double> points(static_cast<std::size_t>(grid.count));
  const double step = (grid.end - grid.start) / grid.count;
  for (int i = 0; i < grid.count; ++i)
    points[static_cast<std::size_t>(i)] = grid.start + step * i;
  return points;
}

}  // namespace kura::cli

#include "vem/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace vem {

using std::numbers::pi;

ProblemSpec default_problem() {
  ProblemSpec p;
  p.name = "default";
  p.forcing = [](double x, double y) { return 15.0 * std::sin(pi * x) * std::sin(pi * y); };
  p.boundary = [](double x, double y) { return x * y * std::sin(pi * x); };
  return p;
}

ProblemSpec l_shaped_problem() {
  ProblemSpec p;
  p.name = "l-shaped";
  p.forcing = [](double, double) { return 0.0; };
  p.boundary = [](double x, double y) {
    const double r = std::hypot(x, y);
    if (r == 0.0) return 0.0;
    double theta = std::atan2(y, x);
    // The cut runs through the missing quadrant; the positive x-axis is a
    // boundary edge approached from below, hence θ = 2π there.
    if (theta <= 0.0) theta += 2.0 * pi;
    return std::pow(r, 2.0 / 3.0) * std::sin((2.0 * theta - pi) / 3.0);
  };
  p.exact = p.boundary;
  return p;
}

ProblemSpec manufactured_sine_problem() {
  ProblemSpec p;
  p.name = "sine";
  p.exact = [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
  p.gradient = [](double x, double y) {
    return Vec2{pi * std::cos(pi * x) * std::sin(pi * y), pi * std::sin(pi * x) * std::cos(pi * y)};
  };
  p.forcing = [](double x, double y) {
    return 2.0 * pi * pi * std::sin(pi * x) * std::sin(pi * y);
  };
  p.boundary = [](double, double) { return 0.0; };
  return p;
}

ProblemSpec linear_problem(double a, double b, double c) {
  ProblemSpec p;
  p.name = "linear";
  p.exact = [=](double x, double y) { return a + b * x + c * y; };
  p.gradient = [=](double, double) { return Vec2{b, c}; };
  p.forcing = [](double, double) { return 0.0; };
  p.boundary = *p.exact;
  return p;
}

ProblemSpec problem_by_name(const std::string& name) {
  if (name == "default") return default_problem();
  if (name == "l-shaped") return l_shaped_problem();
  if (name == "sine") return manufactured_sine_problem();
  throw std::invalid_argument("unknown problem '" + name + "' (expected default, l-shaped or sine)");
}

std::vector<std::string> problem_names() { return {"default", "l-shaped", "sine"}; }

GradientCheck check_gradient(const ProblemSpec& problem, int samples, double lo, double hi,
                             double step, double tolerance) {
  GradientCheck check;
  if (!problem.exact || !problem.gradient) return check;
  const auto& u = *problem.exact;
  const auto& grad = *problem.gradient;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> dist(lo, hi);
  for (int s = 0; s < samples; ++s) {
    const double x = dist(rng);
    const double y = dist(rng);
    const double dx = (u(x + step, y) - u(x - step, y)) / (2.0 * step);
    const double dy = (u(x, y + step) - u(x, y - step)) / (2.0 * step);
    const Vec2 g = grad(x, y);
    const double scale = std::max(1.0, std::hypot(g.x, g.y));
    const double err = std::hypot(dx - g.x, dy - g.y) / scale;
    check.max_relative_error = std::max(check.max_relative_error, err);
  }
  check.passed = check.max_relative_error <= tolerance;
  return check;
}

}  // namespace vem

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vem/local_vem.hpp"

namespace vem {

using GradientField = std::function<Vec2(double, double)>;

/// -Δu = f in the domain, u = g on the boundary.
///
/// New problems are added by writing a factory returning a ProblemSpec and
/// listing it in problem_by_name(); fields are plain callables.
struct ProblemSpec {
  std::string name;
  ScalarField forcing;
  ScalarField boundary;
  std::optional<ScalarField> exact;
  std::optional<GradientField> gradient;
};

/// f = 15 sin(πx) sin(πy), g = xy sin(πx). No exact solution.
ProblemSpec default_problem();

/// Re-entrant corner problem: f = 0, g = u = r^{2/3} sin((2θ - π)/3) with
/// θ in (0, 2π]. Intended for [-1,1]^2 minus the quadrant (0,1]x(0,1].
ProblemSpec l_shaped_problem();

/// u = sin(πx) sin(πy) on the unit square, f = 2π² u, g = 0.
ProblemSpec manufactured_sine_problem();

/// u = a + bx + cy, f = 0, g = u.
ProblemSpec linear_problem(double a, double b, double c);

/// Lookup for the CLI: "default", "l-shaped", "sine".
ProblemSpec problem_by_name(const std::string& name);
std::vector<std::string> problem_names();

struct GradientCheck {
  bool passed = true;
  double max_relative_error = 0.0;
};

/// Compares the analytic gradient with central differences at `samples`
/// points drawn deterministically from the box [lo, hi]^2.
GradientCheck check_gradient(const ProblemSpec& problem, int samples = 100, double lo = 0.0,
                             double hi = 1.0, double step = 1e-6, double tolerance = 1e-5);

}  // namespace vem

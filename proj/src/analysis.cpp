#include "vem/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "vem/error.hpp"
#include "vem/local_vem.hpp"

namespace vem {

namespace {

// Errors below this are treated as exact and get no rate.
constexpr double roundoff_floor = 1e-13;

// Radon 7-point rule, exact for degree 5: barycentric (a, b, b)
// orbits with their weights (summing to 1).
struct TriangleRule {
  double a, b, weight;
  int orbit;  // 1 = centroid, 3 = permutations of (a, b, b)
};
constexpr std::array<TriangleRule, 3> degree5_rule{{
    {1.0 / 3.0, 1.0 / 3.0, 0.225, 1},
    {0.059715871789769820, 0.470142064105115090, 0.132394152788506181, 3},
    {0.797426985353087322, 0.101286507323456339, 0.125939180544827153, 3},
}};

template <typename Integrand>
double integrate_over_polygon(std::span<const Vertex> polygon, Vec2 apex, Integrand&& f) {
  // Fan of signed triangles (apex, v_i, v_i+1); exact decomposition for any
  // simple polygon, convex or not.
  double total = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex& p = polygon[i];
    const Vertex& q = polygon[(i + 1) % n];
    const double area = 0.5 * ((p.x - apex.x) * (q.y - apex.y) - (q.x - apex.x) * (p.y - apex.y));
    double sum = 0.0;
    for (const TriangleRule& r : degree5_rule) {
      const double bary[3][3] = {{r.a, r.b, r.b}, {r.b, r.a, r.b}, {r.b, r.b, r.a}};
      for (int k = 0; k < r.orbit; ++k) {
        const double x = bary[k][0] * apex.x + bary[k][1] * p.x + bary[k][2] * q.x;
        const double y = bary[k][0] * apex.y + bary[k][1] * p.y + bary[k][2] * q.y;
        sum += r.weight * f(x, y);
      }
    }
    total += area * sum;
  }
  return total;
}

struct ElementError {
  double h1_squared = 0.0;
  double diameter = 0.0;
};

ElementError element_error(const Mesh& mesh, std::size_t e, const std::vector<double>& U,
                           const ProblemSpec& problem) {
  const auto polygon = mesh.element_vertices(e);
  const ElementGeometry g = compute_geometry(polygon);
  ElementError out;
  out.diameter = g.diameter;
  if (!problem.gradient) return out;

  const MatrixN3 D = build_D(g, polygon);
  const Matrix3N B = build_Btilde(g, polygon);
  const Projector proj = build_projector(D, B, e);

  Vector u_local(static_cast<Eigen::Index>(polygon.size()));
  const auto& ids = mesh.elements[e].vertex_ids;
  for (std::size_t i = 0; i < ids.size(); ++i) u_local(static_cast<Eigen::Index>(i)) = U[ids[i]];
  const Eigen::Vector3d coeff = proj.Pi * u_local;

  const Vec2 discrete{coeff(1) / g.diameter, coeff(2) / g.diameter};
  const auto& grad = *problem.gradient;
  out.h1_squared = integrate_over_polygon(polygon, g.centroid, [&](double x, double y) {
    const Vec2 exact = grad(x, y);
    const double dx = discrete.x - exact.x;
    const double dy = discrete.y - exact.y;
    return dx * dx + dy * dy;
  });
  return out;
}

}  // namespace

std::vector<double> lumped_vertex_weights(const Mesh& mesh) {
  std::vector<double> w(mesh.n_vertices(), 0.0);
  for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
    const auto& ids = mesh.elements[e].vertex_ids;
    const double share = std::abs(signed_area(mesh, e)) / static_cast<double>(ids.size());
    for (std::size_t id : ids) w[id] += share;
  }
  return w;
}

ErrorReport compute_errors(const Mesh& mesh, const std::vector<double>& U,
                           const ProblemSpec& problem, Execution exec) {
  if (!problem.exact) {
    throw AnalysisError("problem '" + problem.name + "' has no exact solution");
  }
  if (U.size() != mesh.n_vertices()) {
    throw AnalysisError("solution has " + std::to_string(U.size()) + " values for " +
                        std::to_string(mesh.n_vertices()) + " vertices");
  }

  ErrorReport report;
  report.n_dof = mesh.n_vertices();

  const auto weights = lumped_vertex_weights(mesh);
  double l2 = 0.0;
  for (std::size_t i = 0; i < mesh.n_vertices(); ++i) {
    const Vertex& v = mesh.vertices[i];
    const double diff = U[i] - (*problem.exact)(v.x, v.y);
    report.vertex_max_error = std::max(report.vertex_max_error, std::abs(diff));
    l2 += weights[i] * diff * diff;
  }
  report.vertex_l2_error = std::sqrt(l2);

  // Per-element terms land in a buffer and are reduced in element order,
  // so both execution paths give the same bits.
  const std::size_t n = mesh.n_elements();
  std::vector<ElementError> terms(n);
  if (exec == Execution::parallel) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t e = 0; e < count; ++e) {
      const auto idx = static_cast<std::size_t>(e);
      try {
        terms[idx] = element_error(mesh, idx, U, problem);
      } catch (...) {
        errors[idx] = std::current_exception();
      }
    }
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  } else {
    for (std::size_t e = 0; e < n; ++e) terms[e] = element_error(mesh, e, U, problem);
  }

  double h1 = 0.0;
  for (const auto& t : terms) {
    h1 += t.h1_squared;
    report.h_max = std::max(report.h_max, t.diameter);
  }
  if (problem.gradient) report.h1_error = std::sqrt(h1);
  return report;
}

double patch_test(const Mesh& mesh, double a, double b, double c, const SolveOptions& options) {
  const ProblemSpec problem = linear_problem(a, b, c);
  const Solution sol = solve(mesh, problem, options);
  double worst = 0.0;
  for (std::size_t i = 0; i < mesh.n_vertices(); ++i) {
    const Vertex& v = mesh.vertices[i];
    worst = std::max(worst, std::abs(sol.U[i] - (a + b * v.x + c * v.y)));
  }
  return worst;
}

double convergence_rate(double e1, double e2, double h1, double h2) {
  return std::log(e1 / e2) / std::log(h1 / h2);
}

ConvergenceTable convergence_study(const std::vector<Mesh>& meshes, const ProblemSpec& problem,
                                   const SolveOptions& options, Execution exec) {
  if (meshes.size() < 3) {
    throw AnalysisError("convergence study needs at least 3 meshes, got " +
                        std::to_string(meshes.size()));
  }
  if (!problem.exact || !problem.gradient) {
    throw AnalysisError("convergence study needs an exact solution with gradient");
  }

  ConvergenceTable table;
  for (const Mesh& mesh : meshes) {
    const Solution sol = solve(mesh, problem, options, exec);
    const ErrorReport err = compute_errors(mesh, sol.U, problem, exec);
    ConvergenceRow row;
    row.h_max = err.h_max;
    row.n_dof = err.n_dof;
    row.vertex_l2 = err.vertex_l2_error;
    row.h1 = *err.h1_error;

    if (!table.rows.empty()) {
      const ConvergenceRow& prev = table.rows.back();
      if (!(row.h_max < prev.h_max)) {
        throw AnalysisError("meshes must be ordered by strictly decreasing h_max");
      }
      if (prev.vertex_l2 > roundoff_floor && row.vertex_l2 > roundoff_floor) {
        row.rate_l2 = convergence_rate(prev.vertex_l2, row.vertex_l2, prev.h_max, row.h_max);
      }
      if (prev.h1 > roundoff_floor && row.h1 > roundoff_floor) {
        row.rate_h1 = convergence_rate(prev.h1, row.h1, prev.h_max, row.h_max);
      }
      const std::size_t level = table.rows.size();
      if (row.vertex_l2 > prev.vertex_l2 && prev.vertex_l2 > roundoff_floor) {
        table.warnings.push_back("vertex L2 error increased at level " + std::to_string(level));
      }
      if (row.h1 > prev.h1 && prev.h1 > roundoff_floor) {
        table.warnings.push_back("H1 error increased at level " + std::to_string(level));
      }
    }
    table.rows.push_back(row);
  }
  return table;
}

void ConvergenceTable::write_csv(std::ostream& out) const {
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << std::setprecision(17);
  out << "h_max,n_dof,vertex_l2,h1,rate_l2,rate_h1\n";
  for (const ConvergenceRow& r : rows) {
    out << r.h_max << ',' << r.n_dof << ',' << r.vertex_l2 << ',' << r.h1 << ',';
    if (r.rate_l2) out << *r.rate_l2;
    out << ',';
    if (r.rate_h1) out << *r.rate_h1;
    out << '\n';
  }
  out.flags(old_flags);
  out.precision(old_precision);
}

}  // namespace vem

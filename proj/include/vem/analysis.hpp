#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vem/global_solve.hpp"
#include "vem/mesh.hpp"
#include "vem/problems.hpp"

namespace vem {

struct ErrorReport {
  double vertex_max_error = 0.0;
  /// sqrt(sum_i w_i (U_i - u(v_i))^2), w_i = sum over incident E of |E|/N_E.
  double vertex_l2_error = 0.0;
  /// Broken H1 seminorm of grad(Pi u_h) - grad u, integrated per element
  /// with a degree-5 rule on the centroid fan. Empty without a gradient.
  std::optional<double> h1_error;
  double h_max = 0.0;
  std::size_t n_dof = 0;
};

ErrorReport compute_errors(const Mesh& mesh, const std::vector<double>& U,
                           const ProblemSpec& problem, Execution exec = Execution::parallel);

/// Lumped vertex measure used by vertex_l2_error.
std::vector<double> lumped_vertex_weights(const Mesh& mesh);

/// Solves with f = 0 and g = a + bx + cy; returns max |U_i - g(v_i)|.
double patch_test(const Mesh& mesh, double a, double b, double c, const SolveOptions& options = {});

struct ConvergenceRow {
  double h_max = 0.0;
  std::size_t n_dof = 0;
  double vertex_l2 = 0.0;
  double h1 = 0.0;
  /// Rates against the previous row; empty on the first row or when an
  /// error is at round-off level.
  std::optional<double> rate_l2;
  std::optional<double> rate_h1;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  std::vector<std::string> warnings;

  /// h_max,n_dof,vertex_l2,h1,rate_l2,rate_h1 with 17 significant digits.
  void write_csv(std::ostream& out) const;
};

/// log(e1/e2) / log(h1/h2).
double convergence_rate(double e1, double e2, double h1, double h2);

/// Solves on each mesh (coarse to fine) and tabulates errors and rates.
/// Needs at least 3 meshes with strictly decreasing h_max and a problem
/// with exact solution and gradient.
ConvergenceTable convergence_study(const std::vector<Mesh>& meshes, const ProblemSpec& problem,
                                   const SolveOptions& options = {},
                                   Execution exec = Execution::parallel);

}  // namespace vem

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vem/local_vem.hpp"
#include "vem/mesh.hpp"
#include "vem/problems.hpp"
#include "vem/solvers.hpp"
#include "vem/sparse.hpp"

namespace vem {

/// K U = F over all vertices, with the Dirichlet data already evaluated.
struct GlobalSystem {
  CsrMatrix K;
  std::vector<double> F;
  std::vector<std::size_t> boundary_ids;
  /// g at boundary_ids[k].
  std::vector<double> boundary_values;
};

/// Local matrices for every element. The parallel path distributes elements
/// over OpenMP threads; each element's result is independent of the path.
/// An AssemblyError for the lowest failing element index is rethrown.
std::vector<LocalMatrices> compute_local_matrices(const Mesh& mesh, const ScalarField& forcing,
                                                  Execution exec = Execution::parallel);

/// Scatters local matrices in element order, row-major within an element.
GlobalSystem scatter(const Mesh& mesh, const std::vector<LocalMatrices>& locals,
                     const ScalarField& boundary);

GlobalSystem assemble(const Mesh& mesh, const ProblemSpec& problem,
                      Execution exec = Execution::parallel);

enum class SolverKind { automatic, dense, iterative };

std::string to_string(SolverKind kind);

struct SolveOptions {
  SolverKind solver = SolverKind::automatic;
  /// automatic picks dense Cholesky up to this many interior unknowns.
  std::size_t dense_limit = 512;
  IterativeOptions iterative;
  /// Accepted solves satisfy ||K_II U_I - rhs|| <= this * ||rhs||.
  double residual_tolerance = 1e-9;
};

struct Solution {
  std::vector<double> U;
  SolverKind solver = SolverKind::automatic;
  std::size_t iterations = 0;
  std::size_t n_interior = 0;
  double relative_residual = 0.0;
};

/// Eliminates the boundary unknowns, solves K_II U_I = F_I - K_IB U_B and
/// copies g into the boundary entries of U.
Solution condense_and_solve(const GlobalSystem& system, const SolveOptions& options = {});

/// assemble() followed by condense_and_solve().
Solution solve(const Mesh& mesh, const ProblemSpec& problem, const SolveOptions& options = {},
               Execution exec = Execution::parallel);

}  // namespace vem

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vem/sparse.hpp"

namespace vem {

struct IterativeOptions {
  /// Stop when ||r|| <= tolerance * ||b||.
  double tolerance = 1e-10;
  /// Iteration cap is this factor times the system size.
  std::size_t max_iterations_factor = 10;
  Execution exec = Execution::serial;
};

struct IterativeResult {
  std::vector<double> x;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradient for SPD matrices, started from
/// zero. Throws SolverError on breakdown or when the cap is reached.
IterativeResult solve_pcg(const CsrMatrix& A, std::span<const double> b,
                          const IterativeOptions& options = {});

/// Dense Cholesky on the expanded matrix. Throws SolverError if A is not
/// numerically positive definite.
std::vector<double> solve_dense_cholesky(const CsrMatrix& A, std::span<const double> b);

}  // namespace vem

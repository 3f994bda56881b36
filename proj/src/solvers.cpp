#include "vem/solvers.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "vem/error.hpp"

namespace vem {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

IterativeResult solve_pcg(const CsrMatrix& A, std::span<const double> b,
                          const IterativeOptions& options) {
  const std::size_t n = A.rows();
  if (A.cols() != n || b.size() != n) {
    throw SolverError("pcg: matrix is " + std::to_string(A.rows()) + "x" +
                      std::to_string(A.cols()) + ", right-hand side has " +
                      std::to_string(b.size()) + " entries");
  }

  std::vector<double> inv_diag = A.diagonal();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(inv_diag[i] > 0.0)) {
      throw SolverError("pcg: non-positive diagonal entry at row " + std::to_string(i));
    }
    inv_diag[i] = 1.0 / inv_diag[i];
  }

  IterativeResult result;
  result.x.assign(n, 0.0);
  const double b_norm = norm2(b);
  if (n == 0 || b_norm == 0.0) return result;

  std::vector<double> r(b.begin(), b.end());
  std::vector<double> z(n), p(n), q(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rho = dot(r, z);
  double r_norm = b_norm;
  const double target = options.tolerance * b_norm;
  const std::size_t max_iterations = options.max_iterations_factor * n;

  std::size_t it = 0;
  while (r_norm > target) {
    if (it == max_iterations) {
      std::ostringstream msg;
      msg << "pcg: no convergence after " << it << " iterations, relative residual "
          << r_norm / b_norm;
      throw SolverError(msg.str());
    }
    A.multiply(p, q, options.exec);
    const double curvature = dot(p, q);
    if (!(curvature > 0.0)) {
      throw SolverError("pcg: breakdown, matrix is not positive definite (p^T A p = " +
                        std::to_string(curvature) + ")");
    }
    const double alpha = rho / curvature;
    for (std::size_t i = 0; i < n; ++i) {
      result.x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
      z[i] = inv_diag[i] * r[i];
    }
    const double rho_next = dot(r, z);
    const double beta = rho_next / rho;
    rho = rho_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    r_norm = norm2(r);
    ++it;
  }
  result.iterations = it;
  result.relative_residual = r_norm / b_norm;
  return result;
}

std::vector<double> solve_dense_cholesky(const CsrMatrix& A, std::span<const double> b) {
  const auto n = static_cast<Eigen::Index>(A.rows());
  if (A.cols() != A.rows() || b.size() != A.rows()) {
    throw SolverError("cholesky: size mismatch");
  }
  if (n == 0) return {};
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
  const auto rp = A.row_ptr();
  const auto ci = A.col_idx();
  const auto v = A.values();
  for (Eigen::Index r = 0; r < n; ++r) {
    for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) dense(r, static_cast<Eigen::Index>(ci[k])) = v[k];
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(dense);
  if (llt.info() != Eigen::Success) {
    throw SolverError("cholesky: interior matrix is not positive definite");
  }
  const Eigen::VectorXd x = llt.solve(Eigen::Map<const Eigen::VectorXd>(b.data(), n));
  return {x.data(), x.data() + n};
}

}  // namespace vem

#include "vem/global_solve.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "vem/error.hpp"

namespace vem {

std::vector<LocalMatrices> compute_local_matrices(const Mesh& mesh, const ScalarField& forcing,
                                                  Execution exec) {
  const std::size_t n = mesh.n_elements();
  std::vector<LocalMatrices> locals(n);

  if (exec == Execution::serial) {
    for (std::size_t e = 0; e < n; ++e) {
      locals[e] = build_local_matrices(mesh.element_vertices(e), forcing, e);
    }
    return locals;
  }

  // Exceptions cannot cross the parallel region; keep the first by index.
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t e = 0; e < count; ++e) {
    const auto idx = static_cast<std::size_t>(e);
    try {
      locals[idx] = build_local_matrices(mesh.element_vertices(idx), forcing, idx);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return locals;
}

GlobalSystem scatter(const Mesh& mesh, const std::vector<LocalMatrices>& locals,
                     const ScalarField& boundary) {
  const std::size_t n_dof = mesh.n_vertices();
  GlobalSystem sys;
  TripletBuffer triplets(n_dof, n_dof);
  std::size_t total = 0;
  for (const auto& e : mesh.elements) total += e.size() * e.size();
  triplets.reserve(total);
  sys.F.assign(n_dof, 0.0);

  for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
    const auto& ids = mesh.elements[e].vertex_ids;
    const LocalMatrices& local = locals.at(e);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = 0; j < ids.size(); ++j) {
        triplets.add(ids[i], ids[j], local.K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      }
      if (local.f.size() > 0) sys.F[ids[i]] += local.f(static_cast<Eigen::Index>(i));
    }
  }
  sys.K = CsrMatrix(triplets);

  sys.boundary_ids = mesh.boundary;
  sys.boundary_values.reserve(mesh.boundary.size());
  for (std::size_t id : mesh.boundary) {
    const Vertex& v = mesh.vertices[id];
    sys.boundary_values.push_back(boundary(v.x, v.y));
  }
  return sys;
}

GlobalSystem assemble(const Mesh& mesh, const ProblemSpec& problem, Execution exec) {
  return scatter(mesh, compute_local_matrices(mesh, problem.forcing, exec), problem.boundary);
}

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::dense: return "dense-cholesky";
    case SolverKind::iterative: return "jacobi-pcg";
    default: return "automatic";
  }
}

Solution condense_and_solve(const GlobalSystem& system, const SolveOptions& options) {
  const std::size_t n_dof = system.K.rows();
  Solution sol;
  sol.U.assign(n_dof, 0.0);

  std::vector<bool> is_boundary(n_dof, false);
  for (std::size_t id : system.boundary_ids) is_boundary.at(id) = true;
  std::vector<std::size_t> interior;
  for (std::size_t i = 0; i < n_dof; ++i) {
    if (!is_boundary[i]) interior.push_back(i);
  }
  sol.n_interior = interior.size();

  if (!interior.empty()) {
    const CsrMatrix K_II = system.K.submatrix(interior, interior);
    const CsrMatrix K_IB = system.K.submatrix(interior, system.boundary_ids);

    std::vector<double> rhs(interior.size());
    std::vector<double> coupling(interior.size(), 0.0);
    if (!system.boundary_ids.empty()) K_IB.multiply(system.boundary_values, coupling);
    for (std::size_t k = 0; k < interior.size(); ++k) rhs[k] = system.F[interior[k]] - coupling[k];

    SolverKind kind = options.solver;
    if (kind == SolverKind::automatic) {
      kind = interior.size() <= options.dense_limit ? SolverKind::dense : SolverKind::iterative;
    }
    std::vector<double> x;
    if (kind == SolverKind::dense) {
      x = solve_dense_cholesky(K_II, rhs);
    } else {
      auto result = solve_pcg(K_II, rhs, options.iterative);
      sol.iterations = result.iterations;
      x = std::move(result.x);
    }
    sol.solver = kind;

    std::vector<double> Ax(interior.size());
    K_II.multiply(x, Ax);
    double res2 = 0.0;
    double rhs2 = 0.0;
    for (std::size_t k = 0; k < interior.size(); ++k) {
      res2 += (Ax[k] - rhs[k]) * (Ax[k] - rhs[k]);
      rhs2 += rhs[k] * rhs[k];
    }
    sol.relative_residual = rhs2 > 0.0 ? std::sqrt(res2 / rhs2) : std::sqrt(res2);
    if (!std::isfinite(sol.relative_residual) || sol.relative_residual > options.residual_tolerance) {
      std::ostringstream msg;
      msg << to_string(kind) << ": relative residual " << sol.relative_residual
          << " exceeds " << options.residual_tolerance;
      throw SolverError(msg.str());
    }
    for (std::size_t k = 0; k < interior.size(); ++k) sol.U[interior[k]] = x[k];
  }

  for (std::size_t k = 0; k < system.boundary_ids.size(); ++k) {
    sol.U[system.boundary_ids[k]] = system.boundary_values[k];
  }
  return sol;
}

Solution solve(const Mesh& mesh, const ProblemSpec& problem, const SolveOptions& options,
               Execution exec) {
  return condense_and_solve(assemble(mesh, problem, exec), options);
}

}  // namespace vem

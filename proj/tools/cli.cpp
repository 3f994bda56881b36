#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "vem/analysis.hpp"
#include "vem/error.hpp"
#include "vem/global_solve.hpp"
#include "vem/mesh_io.hpp"
#include "vem/problems.hpp"

namespace vem::cli {

namespace {

SolverKind parse_solver(const std::string& name) {
  if (name == "auto") return SolverKind::automatic;
  if (name == "dense") return SolverKind::dense;
  return SolverKind::iterative;
}

void report_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

int solve_command(const std::string& mesh_path, const std::string& problem_name,
                  const std::string& solver, bool strict, const std::string& vtk,
                  const std::string& svg, const std::string& csv, std::ostream& out,
                  std::ostream& err) {
  const ProblemSpec problem = problem_by_name(problem_name);
  ValidationOptions vopts;
  vopts.strict_centroid = strict;
  const ValidatedMesh vm = read_mesh(mesh_path, vopts);
  report_warnings(vm.warnings, err);

  SolveOptions sopts;
  sopts.solver = parse_solver(solver);
  const Solution sol = solve(vm.mesh, problem, sopts);

  out << std::setprecision(6);
  out << "mesh: " << mesh_path << " (" << vm.mesh.n_vertices() << " vertices, "
      << vm.mesh.n_elements() << " elements, " << sol.n_interior << " interior)\n";
  out << "problem: " << problem.name << '\n';
  out << "solver: " << to_string(sol.solver);
  if (sol.solver == SolverKind::iterative) out << " (" << sol.iterations << " iterations)";
  out << ", relative residual " << sol.relative_residual << '\n';
  if (problem.exact) {
    const ErrorReport r = compute_errors(vm.mesh, sol.U, problem);
    out << "vertex max error: " << r.vertex_max_error << '\n';
    out << "vertex l2 error: " << r.vertex_l2_error << '\n';
    if (r.h1_error) out << "h1 error: " << *r.h1_error << '\n';
  }

  if (!vtk.empty()) write_vtk(vtk, vm.mesh, sol.U);
  if (!svg.empty()) write_svg(svg, vm.mesh, sol.U);
  if (!csv.empty()) write_solution_csv(csv, vm.mesh, sol.U);
  return 0;
}

int patch_test_command(const std::string& mesh_path, const std::vector<double>& coeffs,
                       double tolerance, std::ostream& out, std::ostream& err) {
  const ValidatedMesh vm = read_mesh(mesh_path);
  report_warnings(vm.warnings, err);
  const double deviation = patch_test(vm.mesh, coeffs[0], coeffs[1], coeffs[2]);
  out << std::setprecision(6) << "patch test g = " << coeffs[0] << " + " << coeffs[1] << " x + "
      << coeffs[2] << " y\n";
  out << std::scientific << std::setprecision(3) << "max deviation: " << deviation << '\n';
  if (!(deviation < tolerance)) {
    err << "patch test failed: deviation " << deviation << " >= " << tolerance << '\n';
    return 1;
  }
  return 0;
}

int converge_command(const std::string& problem_name, const std::string& kind_name,
                     const std::vector<std::size_t>& levels, const std::string& csv,
                     std::ostream& out, std::ostream& err) {
  const ProblemSpec problem = problem_by_name(problem_name);
  const MeshKind kind = parse_mesh_kind(kind_name);
  std::vector<Mesh> meshes;
  for (std::size_t n : levels) {
    const ValidatedMesh vm = validate_and_orient(generate_structured(kind, n));
    report_warnings(vm.warnings, err);
    meshes.push_back(vm.mesh);
  }
  const ConvergenceTable table = convergence_study(meshes, problem);
  report_warnings(table.warnings, err);
  table.write_csv(out);
  if (!csv.empty()) {
    std::ofstream file(csv);
    if (!file) throw Error("cannot open '" + csv + "' for writing");
    table.write_csv(file);
  }
  return 0;
}

int mesh_gen_command(const std::string& kind_name, std::size_t n, const std::string& path,
                     std::ostream& out) {
  const Mesh mesh = generate_structured(parse_mesh_kind(kind_name), n);
  write_mesh(path, mesh);
  out << "wrote " << path << " (" << mesh.n_vertices() << " vertices, " << mesh.n_elements()
      << " elements)\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lowest-order virtual element solver for the Poisson problem on polygonal meshes",
               "vem"};
  app.require_subcommand(1);

  const std::vector<std::string> problems = problem_names();
  const std::vector<std::string> kinds = {"squares", "triangles", "nonconvex", "l-shaped"};

  std::string mesh_path, problem_name = "default", solver = "auto", vtk, svg, csv;
  bool strict = false;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a problem on a mesh file");
  solve_cmd->add_option("--mesh", mesh_path, "Mesh file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--problem", problem_name, "Problem name")
      ->check(CLI::IsMember(problems))
      ->capture_default_str();
  solve_cmd->add_option("--solver", solver, "Linear solver")
      ->check(CLI::IsMember({"auto", "dense", "cg"}))
      ->capture_default_str();
  solve_cmd->add_flag("--strict", strict, "Reject elements that do not contain their centroid");
  solve_cmd->add_option("--out-vtk", vtk, "Write the solution as legacy VTK");
  solve_cmd->add_option("--out-svg", svg, "Write an SVG rendering of the solution");
  solve_cmd->add_option("--out-csv", csv, "Write vertex_id,x,y,u rows");

  std::string patch_mesh;
  std::vector<double> coeffs = {1.0, 2.0, -3.0};
  double tolerance = 1e-9;
  auto* patch_cmd = app.add_subcommand("patch-test", "Check exact reproduction of a linear solution");
  patch_cmd->add_option("--mesh", patch_mesh, "Mesh file")->required()->check(CLI::ExistingFile);
  patch_cmd->add_option("--coeffs", coeffs, "a,b,c for g = a + b x + c y")
      ->expected(3)
      ->delimiter(',')
      ->capture_default_str();
  patch_cmd->add_option("--tol", tolerance, "Largest accepted deviation")->capture_default_str();

  std::string conv_problem = "sine", conv_kind = "squares", conv_csv;
  std::vector<std::size_t> levels = {8, 16, 32, 64};
  auto* conv_cmd = app.add_subcommand("converge", "Refinement study on structured meshes");
  conv_cmd->add_option("--problem", conv_problem, "Problem with exact solution")
      ->check(CLI::IsMember(problems))
      ->capture_default_str();
  conv_cmd->add_option("--kind", conv_kind, "Mesh family")
      ->check(CLI::IsMember(kinds))
      ->capture_default_str();
  conv_cmd->add_option("--levels", levels, "Cells per unit length, coarse to fine")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  conv_cmd->add_option("--out-csv", conv_csv, "Write the table to this file");

  std::string gen_kind, gen_out;
  std::size_t gen_n = 0;
  auto* gen_cmd = app.add_subcommand("mesh-gen", "Write a structured mesh file");
  gen_cmd->add_option("--kind", gen_kind, "Mesh family")->required()->check(CLI::IsMember(kinds));
  gen_cmd->add_option("--n", gen_n, "Cells per unit length")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--out", gen_out, "Output path")->required();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*solve_cmd) {
      return solve_command(mesh_path, problem_name, solver, strict, vtk, svg, csv, out, err);
    }
    if (*patch_cmd) return patch_test_command(patch_mesh, coeffs, tolerance, out, err);
    if (*conv_cmd) return converge_command(conv_problem, conv_kind, levels, conv_csv, out, err);
    if (*gen_cmd) return mesh_gen_command(gen_kind, gen_n, gen_out, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace vem::cli

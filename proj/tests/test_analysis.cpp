#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "vem/analysis.hpp"
#include "vem/error.hpp"
#include "vem/mesh_io.hpp"

using namespace vem;

namespace {

std::vector<double> interpolate(const Mesh& m, const ScalarField& u) {
  std::vector<double> U(m.n_vertices());
  for (std::size_t i = 0; i < U.size(); ++i) U[i] = u(m.vertices[i].x, m.vertices[i].y);
  return U;
}

/// Same mesh with vertex i renamed perm[i].
Mesh relabel(const Mesh& m, const std::vector<std::size_t>& perm) {
  Mesh r;
  r.vertices.resize(m.n_vertices());
  for (std::size_t i = 0; i < perm.size(); ++i) r.vertices[perm[i]] = m.vertices[i];
  for (const Element& e : m.elements) {
    Element re;
    for (std::size_t v : e.vertex_ids) re.vertex_ids.push_back(perm[v]);
    r.elements.push_back(re);
  }
  for (std::size_t b : m.boundary) r.boundary.push_back(perm[b]);
  std::sort(r.boundary.begin(), r.boundary.end());
  return r;
}

}  // namespace

TEST_CASE("linear data has zero error") {
  const Mesh m = validate_and_orient(generate_structured(MeshKind::nonconvex, 4)).mesh;
  const ProblemSpec p = linear_problem(0.5, -1.0, 2.0);
  const ErrorReport r = compute_errors(m, interpolate(m, *p.exact), p);
  CHECK(r.vertex_max_error == 0.0);
  CHECK(r.vertex_l2_error == 0.0);
  REQUIRE(r.h1_error.has_value());
  CHECK(*r.h1_error < 1e-12);
  CHECK(r.n_dof == m.n_vertices());
}

TEST_CASE("constant shift changes vertex errors only") {
  const Mesh m = generate_structured(MeshKind::squares, 4);
  const ProblemSpec p = manufactured_sine_problem();
  std::vector<double> U = interpolate(m, *p.exact);
  const ErrorReport base = compute_errors(m, U, p);
  for (double& u : U) u += 0.125;
  const ErrorReport shifted = compute_errors(m, U, p);
  CHECK(shifted.vertex_max_error == doctest::Approx(0.125).epsilon(1e-14));
  // Lumped weights sum to the domain area.
  CHECK(shifted.vertex_l2_error == doctest::Approx(0.125).epsilon(1e-13));
  CHECK(*shifted.h1_error == doctest::Approx(*base.h1_error).epsilon(1e-12));

  const auto w = lumped_vertex_weights(m);
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sine on 8x8 squares matches the independent pipeline") {
  // Values from scripts/oracle_sine_squares.py.
  const Mesh m = generate_structured(MeshKind::squares, 8);
  const ProblemSpec p = manufactured_sine_problem();
  const ErrorReport r = compute_errors(m, solve(m, p).U, p);
  CHECK(r.vertex_max_error == doctest::Approx(0.0066997761202841621).epsilon(1e-12));
  CHECK(r.vertex_l2_error == doctest::Approx(0.0033498880601420386).epsilon(1e-12));
  CHECK(*r.h1_error == doctest::Approx(0.35665985582630044).epsilon(1e-12));
  CHECK(r.h_max == doctest::Approx(std::sqrt(2.0) / 8.0).epsilon(1e-15));
}

TEST_CASE("sine on 8x8 triangles matches linear finite elements") {
  // P1 FEM gradient error from scripts/oracle_sine_squares.py.
  const Mesh m = generate_structured(MeshKind::triangles, 8);
  const ProblemSpec p = manufactured_sine_problem();
  const ErrorReport r = compute_errors(m, solve(m, p).U, p);
  CHECK(*r.h1_error == doctest::Approx(0.43223255899229418).epsilon(1e-12));
}

TEST_CASE("errors do not depend on vertex numbering") {
  const Mesh m = validate_and_orient(generate_structured(MeshKind::nonconvex, 5)).mesh;
  std::vector<std::size_t> perm(m.n_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(17);
  std::shuffle(perm.begin(), perm.end(), rng);
  const Mesh r = relabel(m, perm);

  const ProblemSpec p = manufactured_sine_problem();
  const ErrorReport a = compute_errors(m, solve(m, p).U, p);
  const ErrorReport b = compute_errors(r, solve(r, p).U, p);
  CHECK(b.vertex_max_error == doctest::Approx(a.vertex_max_error).epsilon(1e-9));
  CHECK(b.vertex_l2_error == doctest::Approx(a.vertex_l2_error).epsilon(1e-9));
  CHECK(*b.h1_error == doctest::Approx(*a.h1_error).epsilon(1e-9));
}

TEST_CASE("serial and parallel error computation agree bitwise") {
  const Mesh m = validate_and_orient(generate_structured(MeshKind::nonconvex, 10)).mesh;
  const ProblemSpec p = manufactured_sine_problem();
  const auto U = solve(m, p).U;
  const ErrorReport s = compute_errors(m, U, p, Execution::serial);
  const ErrorReport q = compute_errors(m, U, p, Execution::parallel);
  CHECK(s.vertex_l2_error == q.vertex_l2_error);
  CHECK(*s.h1_error == *q.h1_error);
}

TEST_CASE("compute_errors preconditions") {
  const Mesh m = generate_structured(MeshKind::squares, 2);
  CHECK_THROWS_AS(compute_errors(m, std::vector<double>(9, 0.0), default_problem()), AnalysisError);
  CHECK_THROWS_AS(compute_errors(m, std::vector<double>(3, 0.0), manufactured_sine_problem()),
                  AnalysisError);
}

TEST_CASE("patch tests") {
  const Mesh voronoi = read_mesh(VEM_DATA_DIR "/voronoi.mesh").mesh;
  CHECK(patch_test(voronoi, 1.0, 0.0, 0.0) < 1e-12);
  CHECK(patch_test(voronoi, 0.0, 1.0, 0.0) < 1e-10);
  const Mesh nonconvex = validate_and_orient(generate_structured(MeshKind::nonconvex, 8)).mesh;
  CHECK(patch_test(nonconvex, 2.0, -3.0, 5.0) < 1e-9);
  const Mesh tri = generate_structured(MeshKind::triangles, 8);
  CHECK(patch_test(tri, 1.0, 0.0, 0.0) < 1e-12);
}

TEST_CASE("convergence rate formula") {
  CHECK(convergence_rate(4.0, 1.0, 0.2, 0.1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(convergence_rate(1.0, 0.5, 1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("convergence study") {
  std::vector<Mesh> meshes;
  for (std::size_t n : {4, 8, 16}) meshes.push_back(generate_structured(MeshKind::squares, n));
  const ConvergenceTable t = convergence_study(meshes, manufactured_sine_problem());
  REQUIRE(t.rows.size() == 3);
  CHECK_FALSE(t.rows[0].rate_l2.has_value());
  CHECK(t.warnings.empty());
  CHECK(*t.rows[2].rate_h1 == doctest::Approx(1.0).epsilon(0.1));
  CHECK(*t.rows[2].rate_l2 == doctest::Approx(2.0).epsilon(0.1));
  CHECK(t.rows[1].n_dof == 81);

  std::ostringstream csv;
  t.write_csv(csv);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "h_max,n_dof,vertex_l2,h1,rate_l2,rate_h1");
  std::getline(lines, line);
  CHECK(line.substr(line.size() - 2) == ",,");
  int rows = 1;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 3);

  // Errors at round-off give no rates.
  const ConvergenceTable lin = convergence_study(meshes, linear_problem(1.0, 1.0, 1.0));
  for (const auto& row : lin.rows) {
    CHECK_FALSE(row.rate_l2.has_value());
    CHECK_FALSE(row.rate_h1.has_value());
  }

  CHECK_THROWS_AS(convergence_study({meshes[0]}, manufactured_sine_problem()), AnalysisError);
  CHECK_THROWS_AS(convergence_study({meshes[2], meshes[1], meshes[0]}, manufactured_sine_problem()),
                  AnalysisError);
  CHECK_THROWS_AS(convergence_study(meshes, default_problem()), AnalysisError);
}

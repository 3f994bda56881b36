#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "vem/mesh_io.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "vem");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = vem::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "vem_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

const std::string voronoi = VEM_DATA_DIR "/voronoi.mesh";

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"solve"}).code == 2);
  CHECK(run({"solve", "--mesh", voronoi, "--problem", "nope"}).code == 2);
  CHECK(run({"solve", "--mesh", "/nonexistent.mesh"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("solve writes output files") {
  const auto svg = scratch("voronoi.svg");
  const auto csv = scratch("voronoi.csv");
  const Result r = run({"solve", "--mesh", voronoi, "--problem", "default", "--out-svg", svg.string(),
                        "--out-csv", csv.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("solver: dense-cholesky") != std::string::npos);
  CHECK(slurp(svg).find("<svg") != std::string::npos);
  CHECK(slurp(csv).rfind("vertex_id,x,y,u\n", 0) == 0);

  const Result sine = run({"solve", "--mesh", voronoi, "--problem", "sine", "--solver", "cg"});
  CHECK(sine.code == 0);
  CHECK(sine.out.find("jacobi-pcg") != std::string::npos);
  CHECK(sine.out.find("h1 error:") != std::string::npos);
}

TEST_CASE("invalid mesh exits with 1") {
  const auto bad = scratch("bad.mesh");
  std::ofstream(bad) << "vertices 3\n0 0\n1 0\n2 0\nelements 1\n3 0 1 2\nboundary 3\n0 1 2\n";
  const Result r = run({"solve", "--mesh", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("element 0") != std::string::npos);
}

TEST_CASE("patch-test") {
  CHECK(run({"patch-test", "--mesh", voronoi}).code == 0);
  CHECK(run({"patch-test", "--mesh", voronoi, "--coeffs", "0,1,1"}).code == 0);
  CHECK(run({"patch-test", "--mesh", voronoi, "--tol", "0"}).code == 1);
}

TEST_CASE("converge prints a table") {
  const auto csv = scratch("conv.csv");
  const Result r = run({"converge", "--levels", "4,8,16", "--out-csv", csv.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out == slurp(csv));
  std::istringstream lines(r.out);
  std::string line;
  int rows = -1, rates = 0;
  while (std::getline(lines, line)) {
    ++rows;
    if (rows > 0 && line.back() != ',') ++rates;
  }
  CHECK(rows == 3);
  CHECK(rates == 2);
  CHECK(run({"converge", "--levels", "4,8"}).code == 1);
  CHECK(run({"converge", "--problem", "default", "--levels", "4,8,16"}).code == 1);
}

TEST_CASE("mesh-gen") {
  const auto path = scratch("tri.mesh");
  const Result r = run({"mesh-gen", "--kind", "triangles", "--n", "3", "--out", path.string()});
  CHECK(r.code == 0);
  const vem::ValidatedMesh vm = vem::read_mesh(path);
  CHECK(vm.mesh.n_elements() == 18);
  CHECK(run({"mesh-gen", "--kind", "triangles", "--n", "0", "--out", path.string()}).code == 2);
}

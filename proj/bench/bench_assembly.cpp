// Serial reference vs OpenMP kernels.

#include <map>

#include <benchmark/benchmark.h>

#include "vem/analysis.hpp"
#include "vem/global_solve.hpp"
#include "vem/mesh_io.hpp"

namespace {

vem::Execution mode(const benchmark::State& state) {
  return state.range(1) ? vem::Execution::parallel : vem::Execution::serial;
}

const vem::Mesh& mesh(std::size_t n) {
  static std::map<std::size_t, vem::Mesh> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, vem::validate_and_orient(vem::generate_structured(vem::MeshKind::nonconvex, n)).mesh).first;
  }
  return it->second;
}

void BM_LocalMatrices(benchmark::State& state) {
  const vem::Mesh& m = mesh(state.range(0));
  const auto p = vem::manufactured_sine_problem();
  for (auto _ : state) benchmark::DoNotOptimize(vem::compute_local_matrices(m, p.forcing, mode(state)));
  state.SetItemsProcessed(state.iterations() * m.n_elements());
}

void BM_Assemble(benchmark::State& state) {
  const vem::Mesh& m = mesh(state.range(0));
  const auto p = vem::manufactured_sine_problem();
  for (auto _ : state) benchmark::DoNotOptimize(vem::assemble(m, p, mode(state)));
  state.SetItemsProcessed(state.iterations() * m.n_elements());
}

void BM_Multiply(benchmark::State& state) {
  const vem::Mesh& m = mesh(state.range(0));
  const vem::GlobalSystem sys = vem::assemble(m, vem::manufactured_sine_problem());
  std::vector<double> x(sys.K.cols(), 1.0), y(sys.K.rows());
  for (auto _ : state) {
    sys.K.multiply(x, y, mode(state));
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * sys.K.nnz());
}

void BM_Errors(benchmark::State& state) {
  const vem::Mesh& m = mesh(state.range(0));
  const auto p = vem::manufactured_sine_problem();
  const auto U = vem::solve(m, p).U;
  for (auto _ : state) benchmark::DoNotOptimize(vem::compute_errors(m, U, p, mode(state)));
  state.SetItemsProcessed(state.iterations() * m.n_elements());
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long n : {32, 128}) {
    for (long parallel : {0, 1}) b->Args({n, parallel});
  }
  b->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_LocalMatrices)->Apply(sizes);
BENCHMARK(BM_Assemble)->Apply(sizes);
BENCHMARK(BM_Multiply)->Apply(sizes);
BENCHMARK(BM_Errors)->Apply(sizes);

BENCHMARK_MAIN();

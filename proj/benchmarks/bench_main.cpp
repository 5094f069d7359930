#include <benchmark/benchmark.h>

#include <random>

#include "oblab/analysis.hpp"
#include "oblab/chern.hpp"
#include "oblab/forms.hpp"
#include "oblab/linalg.hpp"

using namespace oblab;

namespace {

CMatrix rand_matrix(int s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix m(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

void BM_SchattenNorm(benchmark::State& state) {
  int s = static_cast<int>(state.range(0));
  CMatrix m = rand_matrix(s, 7);
  for (auto _ : state) benchmark::DoNotOptimize(schatten_norm(m, 2.0));
  state.SetComplexityN(s);
}
BENCHMARK(BM_SchattenNorm)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_HermitianEig(benchmark::State& state) {
  int s = static_cast<int>(state.range(0));
  CMatrix m = rand_matrix(s, 11);
  CMatrix h = (m + m.adjoint()) / 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
  state.SetComplexityN(s);
}
BENCHMARK(BM_HermitianEig)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_AssemblePoint(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  AlmostRep v = voiculescu_pair(n);
  LexNormalized psi(v);
  TorusCover cover(2, CircleCover(0.082, 0.5));
  std::vector<double> x = {5.0 / 6.0, 5.0 / 6.0};  // double wrap overlap
  auto patches = cover.active_patches(x, 0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_a(psi, cover, x, patches));
}
BENCHMARK(BM_AssemblePoint)->RangeMultiplier(2)->Range(8, 64);

void BM_ExteriorDerivative(benchmark::State& state) {
  int g = static_cast<int>(state.range(0));
  MatrixFormField f = MatrixFormField::zero(2, 0, 8, {g, g});
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (auto& m : f.comps[0])
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m(i, j) = cplx(nd(rng), nd(rng));
  for (auto _ : state) benchmark::DoNotOptimize(ext_d(f, 4));
}
BENCHMARK(BM_ExteriorDerivative)->Arg(16)->Arg(32);

void BM_Wedge(benchmark::State& state) {
  int g = static_cast<int>(state.range(0));
  MatrixFormField a = MatrixFormField::zero(2, 1, 8, {g, g});
  for (auto& comp : a.comps)
    for (auto& m : comp) m = rand_matrix(8, 5);
  for (auto _ : state) benchmark::DoNotOptimize(wedge(a, a));
}
BENCHMARK(BM_Wedge)->Arg(16)->Arg(32);

void BM_StreamRow(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  AlmostRep v = voiculescu_pair(n);
  LexNormalized psi(v);
  TorusOptions opt;
  opt.grid = 16;
  opt.order = 4;
  opt.overhang = 0.082;
  opt.beta = 0.5;
  opt.want_norms = false;
  for (auto _ : state) {
    T2Result r = analyze_t2(psi, opt);
    benchmark::DoNotOptimize(r);
  }
  state.counters["points"] = opt.grid * opt.grid;
}
BENCHMARK(BM_StreamRow)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

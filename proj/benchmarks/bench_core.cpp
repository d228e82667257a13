#include <benchmark/benchmark.h>

#include "bloch/criteria.hpp"
#include "bloch/div.hpp"
#include "bloch/numeric.hpp"
#include "bloch/periodic_graph.hpp"
#include "bloch/polytope.hpp"

using namespace bloch;

namespace {

PeriodicGraph numeric(const PeriodicGraph& g, int seed) {
  auto out = g.with_label_values(labels_from_spec(g, "random-rational(" + std::to_string(seed) + ")"));
  std::uint64_t st = static_cast<std::uint64_t>(seed);
  std::vector<ParamPoly> pot;
  for (std::size_t i = 0; i < out.size(); ++i) pot.push_back(ParamPoly(random_rational(st)));
  return out.with_potential(pot);
}

void BM_DispersionSymbolic(benchmark::State& s) {
  auto g = s.range(0) == 0 ? honeycomb_diamond(2) : s.range(0) == 1 ? dense_2d() : dice(2);
  for (auto _ : s) benchmark::DoNotOptimize(g.dispersion());
}
BENCHMARK(BM_DispersionSymbolic)->Arg(0)->Arg(1)->Arg(2);

void BM_ExpandedDispersion(benchmark::State& s) {
  auto g = numeric(honeycomb_diamond(2), 1);
  std::vector<long> Q{s.range(0), 1};
  auto qe = q_expand(g, Q);
  for (auto _ : s) benchmark::DoNotOptimize(qe.dispersion());
  s.SetLabel("|Q|m=" + std::to_string(2 * s.range(0)));
}
BENCHMARK(BM_ExpandedDispersion)->DenseRange(1, 8);

void BM_NewtonPolytope(benchmark::State& s) {
  auto D = q_expand(numeric(dice(2), 2), {2, 1}).dispersion();
  for (auto _ : s) benchmark::DoNotOptimize(Polytope::newton(D));
}
BENCHMARK(BM_NewtonPolytope);

void BM_Div(benchmark::State& s) {
  auto D = dense_3d().dispersion();
  for (auto _ : s) benchmark::DoNotOptimize(div_j_sigma(D, 1, {1, 2, 3}));
}
BENCHMARK(BM_Div);

void BM_ProductIdentity(benchmark::State& s) {
  auto qe = q_expand(numeric(dense_2d(), 3), {2, 3});
  for (auto _ : s) benchmark::DoNotOptimize(product_identity(qe, {}, 20, 1));
}
BENCHMARK(BM_ProductIdentity)->Unit(benchmark::kMillisecond);

void BM_AnalyzeHoneycomb(benchmark::State& s) {
  auto g = honeycomb_diamond(2);
  std::vector<long> Q{s.range(0), s.range(1)};
  AnalysisInput in;
  in.base = g;
  in.Q = Q;
  in.potential_Q = potential_from_spec(g, Q, "random-rational(7)");
  for (auto _ : s) benchmark::DoNotOptimize(analyze(in));
}
BENCHMARK(BM_AnalyzeHoneycomb)->Args({2, 3})->Args({5, 7})->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& s) {
  auto g = honeycomb_diamond(2);
  Params p{{"alpha", 6}, {"beta", 3}, {"gamma", 2}, {"V_u", 0}, {"V_v", 0}};
  for (auto _ : s) benchmark::DoNotOptimize(sample_spectrum(g, p, static_cast<int>(s.range(0))));
}
BENCHMARK(BM_Spectrum)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// OpenMP kernels against their serial references, and the two pencil methods against each
// other. Thread count of the parallel kernels follows ESPIRA_THREADS / OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include "espira/bench.hpp"
#include "espira/espira2.hpp"
#include "espira/kernels.hpp"
#include "espira/prony.hpp"
#include "espira/spectral.hpp"

using namespace espira;

namespace
{

struct LoewnerInput
{
  ModulatedDft g;
  IndexList S;
  IndexList Gamma;
};

LoewnerInput loewner_input(Index n_half, Index support)
{
  LoewnerInput in{modulated_dft(sample(bench::preset_sum("example5.4"), n_half)), {}, {}};
  const Index step = 2 * n_half / support;
  for (Index k = 0; k < 2 * n_half; ++k)
  {
    (k % step == 0 && static_cast<Index>(in.S.size()) < support ? in.S : in.Gamma).push_back(k);
  }
  return in;
}

template <bool Parallel>
void BM_Loewner(benchmark::State &state)
{
  const LoewnerInput in = loewner_input(state.range(0), state.range(1));
  for (auto _ : state)
  {
    CMatrix L = Parallel ? kernels::loewner(in.g.values, in.g.nodes, in.Gamma, in.S)
                         : kernels::serial::loewner(in.g.values, in.g.nodes, in.Gamma, in.S);
    benchmark::DoNotOptimize(L.data());
  }
  state.SetItemsProcessed(state.iterations() * in.S.size() * in.Gamma.size());
}

template <bool Parallel>
void BM_Cauchy(benchmark::State &state)
{
  const LoewnerInput in = loewner_input(state.range(0), state.range(1));
  CVector rows(in.Gamma.size()), cols(in.S.size());
  for (std::size_t i = 0; i < in.Gamma.size(); ++i)
  {
    rows[i] = in.g.nodes[in.Gamma[i]];
  }
  for (std::size_t i = 0; i < in.S.size(); ++i)
  {
    cols[i] = 0.97 * in.g.nodes[in.S[i]];
  }
  for (auto _ : state)
  {
    CMatrix C = Parallel ? kernels::cauchy(rows, cols) : kernels::serial::cauchy(rows, cols);
    benchmark::DoNotOptimize(C.data());
  }
}

template <bool Parallel>
void BM_GridMaxima(benchmark::State &state)
{
  const ExponentialSum f = bench::preset_sum("example5.1");
  std::vector<Term> g = f.terms();
  g[0].gamma += 1e-9;
  const double t_max = static_cast<double>(state.range(0));
  for (auto _ : state)
  {
    const auto m = Parallel ? kernels::grid_maxima(f.terms(), g, t_max, 1e-3)
                            : kernels::serial::grid_maxima(f.terms(), g, t_max, 1e-3);
    benchmark::DoNotOptimize(m.max_difference);
  }
}

void BM_Espira2(benchmark::State &state)
{
  const SampleVector f = sample(bench::preset_sum("example5.4"), state.range(0));
  Espira2Options o;
  o.known_order = 8;
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(espira2_recover(f, o).estimate.order());
  }
}

void BM_Mpm(benchmark::State &state)
{
  const SampleVector f = sample(bench::preset_sum("example5.4"), state.range(0));
  PronyOptions o;
  o.known_order = 8;
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(mpm_recover(f, o).estimate.order());
  }
}

}  // namespace

BENCHMARK(BM_Loewner<false>)->Args({1000, 9})->Args({4000, 45});
BENCHMARK(BM_Loewner<true>)->Args({1000, 9})->Args({4000, 45});
BENCHMARK(BM_Cauchy<false>)->Args({1000, 9})->Args({4000, 45});
BENCHMARK(BM_Cauchy<true>)->Args({1000, 9})->Args({4000, 45});
BENCHMARK(BM_GridMaxima<false>)->Arg(199)->Arg(1199);
BENCHMARK(BM_GridMaxima<true>)->Arg(199)->Arg(1199);
BENCHMARK(BM_Espira2)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Mpm)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

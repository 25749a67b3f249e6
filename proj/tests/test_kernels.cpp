// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// The OpenMP kernels against their serial reference versions, on sizes above the
// parallel thresholds and with several thread counts.
#include <doctest.h>

#include <cstdlib>
#include <random>
#include <string>

#include "espira/bench.hpp"
#include "espira/kernels.hpp"
#include "espira/spectral.hpp"
#include "oracles.hpp"

using namespace espira;

namespace
{

struct ThreadsGuard
{
  explicit ThreadsGuard(int n) { setenv("ESPIRA_THREADS", std::to_string(n).c_str(), 1); }
  ~ThreadsGuard() { unsetenv("ESPIRA_THREADS"); }
};

ModulatedDft example_data(Index n_half)
{
  return modulated_dft(sample(bench::preset_sum("example5.2"), n_half));
}

}  // namespace

TEST_CASE("thread count honours the environment cap")
{
  ThreadsGuard guard(3);
  CHECK(kernels::thread_count() == 3);
}

TEST_CASE("Loewner and Cauchy kernels match the serial reference exactly")
{
  const ModulatedDft g = example_data(200);
  IndexList S, Gamma;
  for (Index k = 0; k < 400; ++k)
  {
    (k % 37 == 3 ? S : Gamma).push_back(k);
  }
  const CMatrix ref_l = kernels::serial::loewner(g.values, g.nodes, Gamma, S);
  const CMatrix naive = oracle::naive_loewner(g.values, g.nodes, Gamma, S);
  CHECK((ref_l - naive).norm() == 0.0);
  CVector rows(Gamma.size()), cols(S.size());
  for (std::size_t i = 0; i < Gamma.size(); ++i)
  {
    rows[i] = g.nodes[Gamma[i]];
  }
  for (std::size_t i = 0; i < S.size(); ++i)
  {
    cols[i] = g.nodes[S[i]];
  }
  const CMatrix ref_c = kernels::serial::cauchy(rows, cols);
  for (int threads : {1, 2, 4})
  {
    ThreadsGuard guard(threads);
    CHECK((kernels::loewner(g.values, g.nodes, Gamma, S) - ref_l).norm() == 0.0);
    CHECK((kernels::cauchy(rows, cols) - ref_c).norm() == 0.0);
  }
  CHECK_THROWS_AS(kernels::cauchy(rows, rows), Error);
  CHECK_THROWS_AS(kernels::serial::cauchy(rows, rows), Error);
}

TEST_CASE("barycentric evaluation matches the serial reference")
{
  std::mt19937_64 rng(8);
  std::normal_distribution<double> d;
  const Index m = 30, n = 500;
  CVector s(m), v(m), w(m), x(n);
  for (Index k = 0; k < m; ++k)
  {
    s[k] = std::polar(1.0, 0.2 * k);
    v[k] = {d(rng), d(rng)};
    w[k] = {d(rng), d(rng)};
  }
  for (Index i = 0; i < n; ++i)
  {
    x[i] = {d(rng), d(rng)};
  }
  x[7] = s[4];
  const CVector ref = kernels::serial::barycentric(s, v, w, x);
  CHECK(ref[7] == v[4]);
  for (int threads : {1, 3})
  {
    ThreadsGuard guard(threads);
    const CVector par = kernels::barycentric(s, v, w, x);
    CHECK(oracle::rel_max(par, ref) < 1e-13);
    CHECK(par[7] == v[4]);
  }
}

TEST_CASE("grid evaluation and grid maxima match the serial reference")
{
  const ExponentialSum f = bench::preset_sum("example5.1");
  std::vector<Term> g = f.terms();
  g[2].gamma += 1e-7;
  const Index count = 60001;
  const CVector ref = kernels::serial::evaluate_grid(f.terms(), 0.0, 1e-3, count);
  const auto ref_max = kernels::serial::grid_maxima(f.terms(), g, 59.0, 1e-3);
  for (int threads : {1, 2, 4})
  {
    ThreadsGuard guard(threads);
    CHECK(oracle::rel_max(kernels::evaluate_grid(f.terms(), 0.0, 1e-3, count), ref) < 1e-12);
    const auto par = kernels::grid_maxima(f.terms(), g, 59.0, 1e-3);
    CHECK(par.max_reference == doctest::Approx(ref_max.max_reference).epsilon(1e-12));
    CHECK(par.max_difference == doctest::Approx(ref_max.max_difference).epsilon(1e-6));
  }
  // Integer grid points agree with the samples.
  const SampleVector smp = sample(f, 30);
  for (Index k = 0; k < 60; ++k)
  {
    CHECK(std::abs(ref[1000 * k] - smp[k]) <= 1e-12 * smp.values().cwiseAbs().maxCoeff());
  }
}

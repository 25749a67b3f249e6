// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "espira/aaa.hpp"
#include "espira/bench.hpp"
#include "espira/linalg.hpp"
#include "oracles.hpp"

using namespace espira;

namespace
{

ModulatedDft from_values(const CVector &values)
{
  ModulatedDft g;
  const Index n2 = values.size();
  g.values = values;
  g.n_half = n2 / 2;
  g.nodes.resize(n2);
  for (Index k = 0; k < n2; ++k)
  {
    g.nodes[k] = oracle::root(n2, -k);
  }
  return g;
}

ModulatedDft exact_data(const std::vector<Term> &terms, Index n_half)
{
  return modulated_dft(SampleVector(oracle::naive_samples(terms, n_half)));
}

}  // namespace

TEST_CASE("Loewner matrix entries")
{
  const ModulatedDft c = from_values(CVector::Constant(8, Complex(2.0, 1.0)));
  CHECK(build_loewner(c, {1, 2, 3, 5}, {0, 4}).norm() == 0.0);

  CVector v = CVector::Zero(4);
  v[0] = 1.0;
  const CMatrix L = build_loewner(from_values(v), {1, 2, 3}, {0});
  const Complex i(0.0, 1.0);
  CHECK(std::abs(L(0, 0) - (-1.0) / (i - 1.0)) < 1e-15);
  CHECK(std::abs(L(1, 0) - (-1.0) / (-1.0 - 1.0)) < 1e-15);
  CHECK(std::abs(L(2, 0) - (-1.0) / (-i - 1.0)) < 1e-15);

  const ModulatedDft g = exact_data(bench::preset_sum("example5.1").terms(), 30);
  IndexList S{0, 7, 13, 22, 31, 40, 55}, Gamma;
  for (Index k = 0; k < 60; ++k)
  {
    if (std::find(S.begin(), S.end(), k) == S.end())
    {
      Gamma.push_back(k);
    }
  }
  const CMatrix Lx = build_loewner(g, Gamma, S);
  CHECK((Lx - oracle::naive_loewner(g.values, g.nodes, Gamma, S)).norm() == 0.0);
  const RVector sv = singular_values(Lx);
  CHECK(sv[6] <= 1e-10 * sv[0]);
  CHECK(sv[5] > 1e-8 * sv[0]);
}

TEST_CASE("Cauchy matrix entries")
{
  CVector r1(1), c1(1), r2(2);
  r1 << 2.0;
  c1 << 1.0;
  r2 << 0.0, 2.0;
  CHECK(build_cauchy(r1, c1)(0, 0) == Complex(1.0));
  const CMatrix C = build_cauchy(r2, c1);
  CHECK(C(0, 0) == Complex(-1.0));
  CHECK(C(1, 0) == Complex(1.0));
  CHECK_THROWS_AS(build_cauchy(c1, c1), Error);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> d;
  CVector a(9), b(4);
  for (Index i = 0; i < 9; ++i)
  {
    a[i] = {d(rng), d(rng)};
  }
  for (Index i = 0; i < 4; ++i)
  {
    b[i] = {d(rng), d(rng)};
  }
  const CMatrix R = build_cauchy(a, b);
  for (Index i = 0; i < 9; ++i)
  {
    for (Index k = 0; k < 4; ++k)
    {
      CHECK(R(i, k) == 1.0 / (a[i] - b[k]));
    }
  }
}

TEST_CASE("weights from the smallest right singular vector")
{
  CMatrix L(1, 2);
  L << 1.0, 1.0;
  const CVector w = solve_weights(L);
  CHECK(w.norm() == doctest::Approx(1.0));
  CHECK(std::abs(w[0] + w[1]) < 1e-15);

  CMatrix col(3, 1);
  col << 1.0, 2.0, 3.0;
  CHECK(std::abs(solve_weights(col)[0]) == doctest::Approx(1.0));
}

TEST_CASE("constrained weights satisfy the side condition")
{
  std::mt19937_64 rng(2);
  std::normal_distribution<double> d;
  CMatrix L(6, 2);
  CVector gS(2);
  for (Index i = 0; i < 6; ++i)
  {
    L(i, 0) = {d(rng), d(rng)};
    L(i, 1) = {d(rng), d(rng)};
  }
  gS << Complex(1.0, 2.0), Complex(-0.5, 0.3);
  const CVector w = solve_weights_constrained(L, gS);
  CHECK(w.norm() == doctest::Approx(1.0));
  CHECK(std::abs(w.cwiseProduct(gS).sum()) < 1e-10);

  // Vanishing support values make the side condition vacuous.
  const CVector w0 = solve_weights_constrained(L, CVector::Zero(2));
  const CVector wu = solve_weights(L);
  CHECK(std::abs(std::abs(w0.dot(wu)) - 1.0) < 1e-12);

  CMatrix small(3, 1);
  small << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(solve_weights_constrained(small, CVector::Ones(1)), Error);
}

TEST_CASE("the side condition costs residual on data that violates it")
{
  // Adding a constant to exact data makes it rational of type (M, M): the free kernel vector
  // still annihilates the Loewner matrix at M + 1 supports, the constrained one cannot.
  const std::vector<Term> terms{{1.0, 0.9}, {2.0, Complex(0.3, 0.8)}, {0.5, -0.7}};
  const ModulatedDft exact = exact_data(terms, 16);
  const ModulatedDft g = from_values(exact.values + CVector::Constant(32, Complex(3.0, 0.0)));
  const AaaOutput out = aaa_run(g, 1e-13, 10);
  REQUIRE(out.S.size() == 4);
  const CMatrix L = build_loewner(g, out.Gamma, out.S);
  const double free = (L * solve_weights(L)).norm();
  const double constrained = (L * solve_weights_constrained(L, out.gS)).norm();
  CHECK(free <= 1e-10 * L.norm());
  CHECK(constrained > 1e3 * free);

  // On the unshifted data both kernel vectors are exact.
  const AaaOutput plain = aaa_run(exact, 1e-13, 10);
  REQUIRE(plain.S.size() == 4);
  const CMatrix L0 = build_loewner(exact, plain.Gamma, plain.S);
  CHECK((L0 * solve_weights_constrained(L0, plain.gS)).norm() <= 1e-10 * L0.norm());
}

TEST_CASE("barycentric evaluation")
{
  BarycentricRational one;
  one.support_nodes = CVector::Constant(1, Complex(0.5, 0.0));
  one.support_values = CVector::Constant(1, Complex(3.0, -1.0));
  one.weights = CVector::Ones(1);
  CHECK(std::abs(barycentric_eval(one, Complex(2.0, 7.0)) - Complex(3.0, -1.0)) < 1e-15);

  BarycentricRational r;
  r.support_nodes.resize(3);
  r.support_nodes << 1.0, -1.0, Complex(0.0, 1.0);
  r.support_values.resize(3);
  r.support_values << 2.0, 5.0, -1.0;
  r.weights.resize(3);
  r.weights << 0.3, Complex(0.1, 0.4), -0.5;
  for (Index k = 0; k < 3; ++k)
  {
    CHECK(barycentric_eval(r, r.support_nodes[k]) == r.support_values[k]);
  }
}

TEST_CASE("greedy loop on the six-term signal stops after seven steps")
{
  const ModulatedDft g = modulated_dft(sample(bench::preset_sum("example5.1"), 30));
  const AaaOutput out = aaa_run(g, 1e-13, 29);
  CHECK(out.stop == AaaStop::Residual);
  CHECK(out.M == 6);
  CHECK(out.S.size() == 7);
  CHECK(out.w.cwiseAbs().minCoeff() > 1e-8);
  CHECK(out.w.norm() == doctest::Approx(1.0).epsilon(1e-12));

  // Interpolation on the remaining indices.
  const BarycentricRational r = out.rational(g);
  const double gmax = g.values.cwiseAbs().maxCoeff();
  for (Index k : out.Gamma)
  {
    CHECK(std::abs(r(g.nodes[k]) - g.values[k]) <= 1e-10 * gmax);
  }
  // Rank law along the way.
  for (std::size_t j = 0; j + 1 < out.sigma_history.size(); ++j)
  {
    CHECK(out.sigma_history[j] > 1e-8 * out.sigma_max_history[j]);
  }
  CHECK(out.sigma_history.back() <= 1e-10 * out.sigma_max_history.back());
}

TEST_CASE("a single nonzero value needs a second support point")
{
  // One support gives the constant g_5, still off by |g_5| elsewhere; the second support
  // (lowest index among equal residuals) yields a zero weight at index 5 and r = 0 off it.
  CVector v = CVector::Zero(16);
  v[5] = Complex(2.0, 1.0);
  const AaaOutput out = aaa_run(from_values(v), 1e-13, 7);
  CHECK(out.M == 1);
  CHECK(out.S == IndexList{5, 0});
  CHECK(std::abs(out.w[0]) < 1e-14);
  CHECK(out.converged());
}

TEST_CASE("partition and greedy invariants hold at every step")
{
  std::mt19937_64 rng(9);
  const auto terms = oracle::random_terms(rng, 3, 16);
  const ModulatedDft g = exact_data(terms, 16);
  const AaaOutput full = aaa_run(g, 1e-13, 15);
  CHECK(full.M == 3);
  const double gmax = g.values.cwiseAbs().maxCoeff();
  for (Index k : full.Gamma)
  {
    CHECK(std::abs(full.rational(g)(g.nodes[k]) - g.values[k]) <= 1e-13 * gmax);
  }

  // Replaying step j and choosing the worst residual must give the (j+1)-th support index.
  const Index lead = std::max_element(g.values.data(), g.values.data() + 32,
                                      [](Complex a, Complex b) { return std::abs(a) < std::abs(b); }) -
                     g.values.data();
  CHECK(full.S[0] == lead);
  for (Index j = 1; j < static_cast<Index>(full.S.size()); ++j)
  {
    AaaOptions o;
    o.fixed_steps = j;
    const AaaOutput part = aaa_run(g, o);
    std::set<Index> all(part.S.begin(), part.S.end());
    all.insert(part.Gamma.begin(), part.Gamma.end());
    CHECK(all.size() == 32);
    CHECK(part.S.size() + part.Gamma.size() == 32);
    CHECK(static_cast<Index>(part.S.size()) == j);
    Index best = -1;
    double worst = -1.0;
    for (std::size_t i = 0; i < part.Gamma.size(); ++i)
    {
      const double res = std::abs(part.r_gamma[i] - g.values[part.Gamma[i]]);
      if (res > worst)
      {
        worst = res;
        best = part.Gamma[i];
      }
    }
    CHECK(best == full.S[j]);
  }
}

TEST_CASE("running out of steps is flagged")
{
  const ModulatedDft g = modulated_dft(sample(bench::preset_sum("example5.1"), 30));
  const AaaOutput out = aaa_run(g, 1e-13, 3);
  CHECK(out.stop == AaaStop::MaxIterations);
  CHECK_FALSE(out.converged());
  CHECK(out.S.size() == 3);
  CHECK_THROWS_AS(aaa_run(g, -1.0, 3), Error);
  CHECK_THROWS_AS(aaa_run(g, 1e-13, 60), Error);
}

TEST_CASE("absolute and relative tolerances differ by max|g|")
{
  const ModulatedDft g = modulated_dft(sample(bench::preset_sum("example5.1"), 30));
  AaaOptions rel;
  AaaOptions abs_;
  abs_.relative = false;
  CHECK(aaa_run(g, rel).threshold == doctest::Approx(1e-13 * g.values.cwiseAbs().maxCoeff()));
  CHECK(aaa_run(g, abs_).threshold == 1e-13);
}

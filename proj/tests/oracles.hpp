// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations for the tests. Everything here is deliberately naive:
// O(N^2) transforms, repeated multiplication, brute-force assignment, companion matrices.
#ifndef ESPIRA_TESTS_ORACLES_HPP
#define ESPIRA_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "espira/model.hpp"

namespace oracle
{

using espira::CMatrix;
using espira::Complex;
using espira::CVector;
using espira::Index;

// exp(-2 pi i e / n) with e reduced mod n first.
inline Complex root(Index n, long long e)
{
  e %= n;
  if (e < 0)
  {
    e += n;
  }
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

inline CVector naive_dft(const CVector &f)
{
  const Index n = f.size();
  CVector out = CVector::Zero(n);
  for (Index k = 0; k < n; ++k)
  {
    for (Index l = 0; l < n; ++l)
    {
      out[k] += f[l] * root(n, static_cast<long long>(k) * l);
    }
  }
  return out;
}

inline Complex power(Complex z, Index k)
{
  Complex acc(1.0);
  for (Index i = 0; i < k; ++i)
  {
    acc *= z;
  }
  return acc;
}

inline CVector naive_samples(const std::vector<espira::Term> &terms, Index n_half)
{
  CVector out = CVector::Zero(2 * n_half);
  for (const auto &t : terms)
  {
    Complex zk(1.0);
    for (Index k = 0; k < 2 * n_half; ++k)
    {
      out[k] += t.gamma * zk;
      zk *= t.z;
    }
  }
  return out;
}

// g_k = sum_j gamma_j (1 - z_j^{2N}) / (omega^{-k} - z_j).
inline CVector rational_g(const std::vector<espira::Term> &terms, Index n_half)
{
  const Index n2 = 2 * n_half;
  CVector g = CVector::Zero(n2);
  for (Index k = 0; k < n2; ++k)
  {
    const Complex node = root(n2, -k);
    for (const auto &t : terms)
    {
      g[k] += t.gamma * (1.0 - power(t.z, n2)) / (node - t.z);
    }
  }
  return g;
}

inline CMatrix naive_hankel(const CVector &f, Index rows, Index cols, Index offset = 0)
{
  CMatrix H(rows, cols);
  for (Index i = 0; i < rows; ++i)
  {
    for (Index j = 0; j < cols; ++j)
    {
      H(i, j) = f[i + j + offset];
    }
  }
  return H;
}

inline CMatrix naive_vandermonde(const std::vector<Complex> &z, Index rows)
{
  CMatrix V(rows, static_cast<Index>(z.size()));
  for (Index j = 0; j < V.cols(); ++j)
  {
    for (Index k = 0; k < rows; ++k)
    {
      V(k, j) = power(z[j], k);
    }
  }
  return V;
}

inline CMatrix naive_loewner(const CVector &values, const CVector &nodes,
                             const std::vector<Index> &rows, const std::vector<Index> &cols)
{
  CMatrix L(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    for (std::size_t j = 0; j < cols.size(); ++j)
    {
      L(i, j) = (values[rows[i]] - values[cols[j]]) / (nodes[rows[i]] - nodes[cols[j]]);
    }
  }
  return L;
}

// Ascending coefficients of prod (z - r_i).
inline std::vector<Complex> poly_from_roots(const std::vector<Complex> &roots)
{
  std::vector<Complex> c{1.0};
  for (Complex r : roots)
  {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
    {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  return c;
}

// Roots of a polynomial (ascending coefficients) from its companion matrix.
inline std::vector<Complex> companion_roots(std::vector<Complex> c)
{
  while (c.size() > 1 && std::abs(c.back()) == 0.0)
  {
    c.pop_back();
  }
  const Index n = static_cast<Index>(c.size()) - 1;
  if (n < 1)
  {
    return {};
  }
  CMatrix C = CMatrix::Zero(n, n);
  for (Index i = 1; i < n; ++i)
  {
    C(i, i - 1) = 1.0;
  }
  for (Index i = 0; i < n; ++i)
  {
    C(i, n - 1) = -c[i] / c[n];
  }
  Eigen::ComplexEigenSolver<CMatrix> es(C, false);
  const CVector ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// Numerator of the barycentric denominator: sum_j w_j prod_{i != j} (z - s_i).
inline std::vector<Complex> barycentric_numerator(const CVector &s, const CVector &w)
{
  const Index m = s.size();
  std::vector<Complex> total(m, 0.0);
  for (Index j = 0; j < m; ++j)
  {
    std::vector<Complex> others;
    for (Index i = 0; i < m; ++i)
    {
      if (i != j)
      {
        others.push_back(s[i]);
      }
    }
    const auto p = poly_from_roots(others);
    for (std::size_t i = 0; i < p.size(); ++i)
    {
      total[i] += w[j] * p[i];
    }
  }
  return total;
}

// Largest distance from each a to its nearest b, after a brute-force best pairing.
inline double matched_distance(std::vector<Complex> a, std::vector<Complex> b)
{
  if (a.size() != b.size())
  {
    return INFINITY;
  }
  std::vector<std::size_t> perm(b.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best_sum = INFINITY, best_max = INFINITY;
  do
  {
    double sum = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
      const double d = std::abs(a[i] - b[perm[i]]);
      sum += d;
      mx = std::max(mx, d);
    }
    if (sum < best_sum)
    {
      best_sum = sum;
      best_max = mx;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best_max;
}

// Two-sided nearest-neighbour distance between point sets; for sets too large to permute.
inline double hausdorff(const std::vector<Complex> &a, const std::vector<Complex> &b)
{
  if (a.size() != b.size())
  {
    return INFINITY;
  }
  auto one_side = [](const std::vector<Complex> &x, const std::vector<Complex> &y) {
    double worst = 0.0;
    for (Complex p : x)
    {
      double best = INFINITY;
      for (Complex q : y)
      {
        best = std::min(best, std::abs(p - q));
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_side(a, b), one_side(b, a));
}

// Brute-force minimum |dz| assignment: pairing[i] = recovered index for true index i.
inline std::vector<Index> brute_force_assignment(const std::vector<Complex> &truth,
                                                 const std::vector<Complex> &rec)
{
  std::vector<Index> perm(rec.size()), best;
  std::iota(perm.begin(), perm.end(), 0);
  double best_sum = INFINITY;
  do
  {
    double sum = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i)
    {
      sum += std::abs(truth[i] - rec[perm[i]]);
    }
    if (sum < best_sum - 1e-15)
    {
      best_sum = sum;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline double rel_max(const CVector &a, const CVector &b)
{
  return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

// Random exact signal: knots with modulus in [rmin, rmax] and arguments at least `gap`
// radians from each other and at least `unit_gap` away from any 2N-th root of unity.
struct SignalDraw
{
  double rmin = 0.85;
  double rmax = 1.0;
  double gap = 0.2;
  double unit_gap = 1e-3;
};

inline std::vector<espira::Term> random_terms(std::mt19937_64 &rng, Index M, Index n_half,
                                              const SignalDraw &draw = {})
{
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<espira::Term> terms;
  const double two_pi = 2.0 * std::numbers::pi;
  while (static_cast<Index>(terms.size()) < M)
  {
    const double r = draw.rmin + (draw.rmax - draw.rmin) * U(rng);
    const double a = two_pi * U(rng) - std::numbers::pi;
    const Complex z = std::polar(r, a);
    bool ok = std::abs(1.0 - power(z, 2 * n_half)) > 1e-6;
    for (const auto &t : terms)
    {
      ok = ok && std::abs(std::arg(z / t.z)) > draw.gap;
    }
    // Distance from the nearest grid node.
    const double step = two_pi / static_cast<double>(2 * n_half);
    const double node = std::round(a / step) * step;
    ok = ok && std::abs(z - std::polar(1.0, node)) > draw.unit_gap;
    if (ok)
    {
      const Complex gamma = std::polar(0.5 + U(rng), two_pi * U(rng));
      terms.push_back({gamma, z});
    }
  }
  return terms;
}

}  // namespace oracle

#endif  // ESPIRA_TESTS_ORACLES_HPP

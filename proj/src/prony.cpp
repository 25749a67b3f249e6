// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "espira/prony.hpp"

#include <cmath>

#include "espira/linalg.hpp"

namespace espira
{

namespace
{

Index window(const SampleVector &f, Index L)
{
  return L > 0 ? L : f.n_half();
}

RecoveryResult finish(const SampleVector &f, const CVector &z, Method method, Index rank)
{
  RecoveryResult result;
  result.method = method;
  result.diagnostics.numerical_rank = rank;
  const auto ls = least_squares(vandermonde(z, f.size()), f.values());
  result.diagnostics.coefficient_condition = ls.condition;
  std::vector<Term> terms;
  for (Index j = 0; j < z.size(); ++j)
  {
    terms.push_back({ls.x[j], z[j]});
  }
  result.estimate = ExponentialSum(std::move(terms));
  return result;
}

CMatrix hankel(const CVector &v, Index rows, Index cols, Index shift)
{
  CMatrix H(rows, cols);
  for (Index c = 0; c < cols; ++c)
  {
    H.col(c) = v.segment(c + shift, rows);
  }
  return H;
}

}  // namespace

HankelTriple build_hankel(const SampleVector &f, Index L)
{
  const Index n = f.n_half();
  require(L >= 1 && L <= n, ErrorCode::BadWindow, "window length must satisfy 1 <= L <= N");
  const Index rows = 2 * n - L;
  HankelTriple h;
  h.H_full = hankel(f.values(), rows, L + 1, 0);
  h.H0 = h.H_full.leftCols(L);
  h.H1 = h.H_full.rightCols(L);
  return h;
}

RecoveryResult mpm_recover(const SampleVector &f, const PronyOptions &options)
{
  const Index L = window(f, options.L);
  const HankelTriple h = build_hankel(f, L);
  const PivotedQr qr = qr_col_pivot(h.H_full, false);
  const Index k = std::min(qr.R.rows(), qr.R.cols());
  const double r11 = std::abs(qr.R(0, 0));
  require(r11 > 0.0, ErrorCode::RankZero, "Hankel matrix vanishes");
  Index M = k;
  if (options.known_order)
  {
    M = *options.known_order;
  }
  else
  {
    for (Index i = 1; i < k; ++i)
    {
      if (std::abs(qr.R(i, i)) < options.eps * r11)
      {
        M = i;
        break;
      }
    }
  }
  M = std::min(M, L);
  require(M >= 1, ErrorCode::RankZero, "numerical rank is zero");

  // S = (R P^T)(1:M, :), i.e. column perm[j] of S is column j of R.
  CMatrix S(M, L + 1);
  for (Index j = 0; j < L + 1; ++j)
  {
    S.col(qr.perm[j]) = qr.R.block(0, j, M, 1);
  }
  if (options.precondition)
  {
    for (Index i = 0; i < M; ++i)
    {
      S.row(i) /= qr.R(i, i);
    }
  }
  const CMatrix S0t = S.leftCols(L).transpose();
  const CMatrix S1t = S.rightCols(L).transpose();
  const CVector z = eig_general(pinv(S0t) * S1t);
  auto result = finish(f, z, Method::Mpm, M);
  return result;
}

RecoveryResult mpm_recover(const SampleVector &f, Index L, double eps, bool precondition)
{
  PronyOptions options;
  options.L = L;
  options.eps = eps;
  options.precondition = precondition;
  return mpm_recover(f, options);
}

RecoveryResult esprit_recover(const SampleVector &f, const PronyOptions &options)
{
  const Index L = window(f, options.L);
  const HankelTriple h = build_hankel(f, L);
  const SvdResult s = svd(h.H_full, SvdParts::RightOnly);
  const RVector &sigma = s.singular_values;
  require(sigma[0] > 0.0, ErrorCode::RankZero, "Hankel matrix vanishes");
  Index M = sigma.size();
  if (options.known_order)
  {
    M = *options.known_order;
  }
  else
  {
    for (Index i = 1; i < sigma.size(); ++i)
    {
      if (sigma[i] < options.eps * sigma[0])
      {
        M = i;
        break;
      }
    }
  }
  M = std::min(M, L);
  require(M >= 1, ErrorCode::RankZero, "numerical rank is zero");
  const CMatrix W0t = s.V_h.block(0, 0, M, L).transpose();
  const CMatrix W1t = s.V_h.block(0, 1, M, L).transpose();
  const CVector z = eig_general(pinv(W0t) * W1t);
  return finish(f, z, Method::Esprit, M);
}

RecoveryResult esprit_recover(const SampleVector &f, Index L, double eps)
{
  PronyOptions options;
  options.L = L;
  options.eps = eps;
  return esprit_recover(f, options);
}

}  // namespace espira

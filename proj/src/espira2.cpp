// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "espira/espira2.hpp"

#include <cmath>
#include <limits>

#include "espira/kernels.hpp"
#include "espira/linalg.hpp"

namespace espira
{

PreconditionResult precondition_indices(const ModulatedDft &g, double tol, Index jmax,
                                        Index steps)
{
  const Index n = g.values.size() / 2;
  AaaOptions options;
  options.tol = tol;
  options.stop_on_residual = false;
  options.stop_on_kernel = true;
  options.kernel_tol = tol;
  if (steps > 0)
  {
    require(steps <= n, ErrorCode::InvalidArgument, "support size must not exceed N");
    options.fixed_steps = steps;
  }
  else
  {
    options.jmax = jmax > 0 ? jmax : n - 1;
  }
  const AaaOutput out = aaa_run(g, options);

  PreconditionResult result;
  result.S = out.S;
  result.Gamma = out.Gamma;
  result.sigma_history = out.sigma_history;
  if (out.stop == AaaStop::Kernel)
  {
    result.Gamma.push_back(result.S.back());
    result.S.pop_back();
  }
  result.converged = out.stop != AaaStop::MaxIterations;
  result.M_tilde = static_cast<Index>(result.S.size());
  return result;
}

LoewnerPair build_loewner_pair(const DftVector &fhat, const IndexList &S, const IndexList &Gamma)
{
  const ModulatedDft g = modulate(fhat);
  return {kernels::loewner(g.values, g.nodes, Gamma, S),
          kernels::loewner(fhat.values, g.nodes, Gamma, S), S, Gamma};
}

CVector pencil_eigs(const LoewnerPair &pair, double tol, std::optional<Index> known_rank)
{
  const Index mt = pair.L0.cols();
  require(mt >= 1 && pair.L1.cols() == mt && pair.L0.rows() == pair.L1.rows(),
          ErrorCode::InvalidArgument, "Loewner pair shapes differ or are empty");
  CMatrix joint(pair.L0.rows(), 2 * mt);
  joint << pair.L0, pair.L1;
  const SvdResult s = svd(joint, SvdParts::RightOnly);
  const RVector &sigma = s.singular_values;
  require(sigma.size() > 0 && sigma[0] > 0.0, ErrorCode::RankZero, "Loewner pair vanishes");
  Index M = 0;
  if (known_rank)
  {
    M = *known_rank;
  }
  else
  {
    M = sigma.size();
    for (Index i = 1; i < sigma.size(); ++i)
    {
      if (sigma[i] < tol * sigma[0])
      {
        M = i;
        break;
      }
    }
  }
  M = std::min(M, mt);
  require(M >= 1, ErrorCode::RankZero, "numerical rank is zero");
  // Rows of W = V^H span the row space [T B^T, T Z B^T]; transposing exposes Z by similarity.
  const CMatrix W0t = s.V_h.block(0, 0, M, mt).transpose();
  const CMatrix W1t = s.V_h.block(0, mt, M, mt).transpose();
  return eig_general(pinv(W0t) * W1t);
}

CVector fit_coefficients(const SampleVector &f, const CVector &z, CoefficientMode mode,
                         RecoveryDiagnostics &diag)
{
  const Index n2 = f.size();
  if (mode == CoefficientMode::Cauchy)
  {
    double worst = std::numeric_limits<double>::infinity();
    CVector denom(z.size());
    for (Index j = 0; j < z.size(); ++j)
    {
      denom[j] = 1.0 - integer_power(z[j], n2);
      worst = std::min(worst, std::abs(denom[j]));
    }
    if (worst > 1e-6)
    {
      const ModulatedDft g = modulated_dft(f);
      const auto ls = least_squares(kernels::cauchy(g.nodes, z), g.values);
      diag.coefficient_condition = ls.condition;
      diag.cauchy_coefficients = true;
      return ls.x.cwiseQuotient(denom);
    }
  }
  const auto ls = least_squares(vandermonde(z, n2), f.values());
  diag.coefficient_condition = ls.condition;
  diag.cauchy_coefficients = false;
  return ls.x;
}

RecoveryResult espira2_recover(const SampleVector &f, const Espira2Options &options)
{
  require(options.tol > 0.0, ErrorCode::InvalidArgument, "tol must be positive");
  const DftVector fhat = dft_forward(f);
  const ModulatedDft g = modulate(fhat);
  Index steps = 0;
  if (options.known_order)
  {
    const Index M = *options.known_order;
    require(M >= 1 && M < f.n_half(), ErrorCode::InvalidArgument,
            "known order must satisfy 1 <= M < N");
    steps = options.support.value_or(M + 1);
    require(steps >= M, ErrorCode::InvalidArgument, "support size must be at least M");
  }
  const auto pre = precondition_indices(g, options.precondition_tol.value_or(options.tol),
                                        options.jmax, steps);
  require(pre.M_tilde >= 1, ErrorCode::RankZero, "no support indices were selected");
  const LoewnerPair pair = build_loewner_pair(fhat, pre.S, pre.Gamma);
  const CVector z = pencil_eigs(pair, options.rank_tol.value_or(options.tol), options.known_order);

  RecoveryResult result;
  result.method = Method::Espira2;
  auto &diag = result.diagnostics;
  diag.iterations = static_cast<int>(pre.sigma_history.size());
  diag.converged = pre.converged;
  diag.sigma_history = pre.sigma_history;
  diag.numerical_rank = z.size();
  const CVector gamma = fit_coefficients(f, z, options.coefficients, diag);
  std::vector<Term> terms;
  for (Index j = 0; j < z.size(); ++j)
  {
    terms.push_back({gamma[j], z[j]});
  }
  result.estimate = ExponentialSum(std::move(terms));
  return result;
}

}  // namespace espira

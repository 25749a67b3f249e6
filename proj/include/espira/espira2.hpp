// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

///
/// \file espira2.hpp
///
/// Matrix pencil on Loewner matrices. The greedy loop only selects the index partition;
/// the knots are the eigenvalues of the pencil z L0 - L1 built from the DFT, so knots on the
/// DFT grid need no special treatment.
///
#ifndef ESPIRA_ESPIRA2_HPP
#define ESPIRA_ESPIRA2_HPP

#include <optional>

#include "espira/aaa.hpp"

namespace espira
{

struct LoewnerPair
{
  CMatrix L0;  // (g_l - g_k) / (omega^{-l} - omega^{-k})
  CMatrix L1;  // (fhat_l - fhat_k) / (omega^{-l} - omega^{-k})
  IndexList S;
  IndexList Gamma;
};

struct PreconditionResult
{
  IndexList S;
  IndexList Gamma;
  Index M_tilde = 0;
  bool converged = true;  // false when jmax ran out before the rank dropped
  std::vector<double> sigma_history;
};

///
/// Greedy selection that stops as soon as the Loewner matrix loses rank,
/// sigma_min < tol * sigma_1, and hands back the support set without its last index. With
/// steps > 0 the loop otherwise runs exactly that many steps and keeps every index.
///
PreconditionResult precondition_indices(const ModulatedDft &g, double tol, Index jmax,
                                        Index steps = 0);

LoewnerPair build_loewner_pair(const DftVector &fhat, const IndexList &S, const IndexList &Gamma);

/// Knots from the joint SVD of [L0 L1]; rank by sigma_{M+1} < tol * sigma_1 unless given.
CVector pencil_eigs(const LoewnerPair &pair, double tol,
                    std::optional<Index> known_rank = std::nullopt);

enum class CoefficientMode
{
  Vandermonde,
  Cauchy
};

struct Espira2Options
{
  double tol = 1e-13;
  std::optional<double> precondition_tol;  // overrides tol for the greedy stop
  std::optional<double> rank_tol;          // overrides tol for the pencil rank
  std::optional<Index> known_order;
  // Greedy steps when the order is known; M + 1 by default, which leaves one redundant
  // support column and damps noise. M suits smooth-function approximation.
  std::optional<Index> support;
  Index jmax = 0;  // 0 selects N - 1
  CoefficientMode coefficients = CoefficientMode::Vandermonde;
};

RecoveryResult espira2_recover(const SampleVector &f, const Espira2Options &options = {});

/// Coefficients for given knots: Vandermonde least squares on the samples, or Cauchy least
/// squares on the modulated DFT when every |1 - z^{2N}| > 1e-6 (falls back otherwise).
/// Reports which system was solved and its condition number.
CVector fit_coefficients(const SampleVector &f, const CVector &z, CoefficientMode mode,
                         RecoveryDiagnostics &diag);

}  // namespace espira

#endif  // ESPIRA_ESPIRA2_HPP

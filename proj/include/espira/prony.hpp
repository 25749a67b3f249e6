// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

///
/// \file prony.hpp
///
/// Hankel-matrix baselines: the matrix pencil method on a column-pivoted QR and ESPRIT on
/// the SVD of H = (f_{k+l}), both with window length L.
///
#ifndef ESPIRA_PRONY_HPP
#define ESPIRA_PRONY_HPP

#include <optional>

#include "espira/model.hpp"

namespace espira
{

struct HankelTriple
{
  CMatrix H_full;  // (2N - L) x (L + 1)
  CMatrix H0;      // last column dropped
  CMatrix H1;      // first column dropped
};

/// BadWindow unless 1 <= L <= N.
HankelTriple build_hankel(const SampleVector &f, Index L);

struct PronyOptions
{
  Index L = 0;  // 0 selects L = N
  double eps = 1e-10;
  std::optional<Index> known_order;
  bool precondition = true;  // MPM: scale the pencil rows by the leading R diagonal
};

RecoveryResult mpm_recover(const SampleVector &f, const PronyOptions &options = {});
RecoveryResult mpm_recover(const SampleVector &f, Index L, double eps, bool precondition);

RecoveryResult esprit_recover(const SampleVector &f, const PronyOptions &options = {});
RecoveryResult esprit_recover(const SampleVector &f, Index L, double eps);

}  // namespace espira

#endif  // ESPIRA_PRONY_HPP

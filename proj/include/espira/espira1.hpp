// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

///
/// \file espira1.hpp
///
/// Recovery through rational interpolation of the modulated DFT: the greedy barycentric fit
/// gives r_M(z) = sum_j a_j / (z - z_j) with a_j = gamma_j (1 - z_j^{2N}). Knots lying on the
/// DFT grid (z^{2N} = 1) break that structure at single indices and are split off first.
///
#ifndef ESPIRA_ESPIRA1_HPP
#define ESPIRA_ESPIRA1_HPP

#include "espira/aaa.hpp"

namespace espira
{

struct PartialFraction
{
  CVector poles;
  CVector residues;

  Complex operator()(Complex z) const;
};

struct Espira1Options
{
  double tol = 1e-13;
  bool relative = true;
  Index jmax = 0;             // 0 selects N - 1
  Index fixed_order = 0;      // > 0: run exactly fixed_order + 1 greedy steps
  bool constrained = false;   // type (J-2, J-1) side condition in the greedy loop
  bool unit_roots = true;     // split off grid-node knots
  // Weights with |w_k| <= zero_weight * max|w| mark unit-root support indices.
  double zero_weight = 1e-13;
  // Gamma indices whose residual exceeds unit_residual * max|g| are unit-root candidates.
  double unit_residual = 1e-8;
  // Poles closer than this to a grid node are snapped onto it.
  double snap = 1e-8;
  // Residues below froissart * max|a| are dropped as spurious pole/zero pairs.
  double froissart = 1e-13;
};

/// Finite zeros of the barycentric denominator of the greedy output.
CVector poles_from_barycentric(const AaaOutput &out, const ModulatedDft &g);

/// Least-squares residues of sum_j a_j / (omega^{-k} - z_j) = g_k over all k.
CVector residues_cauchy(const CVector &poles, const ModulatedDft &g);

RecoveryResult espira1_recover(const SampleVector &f, const Espira1Options &options = {});
RecoveryResult espira1_recover(const SampleVector &f, double tol);

/// Converts residues a_j to coefficients gamma_j = a_j / (1 - z_j^{2N}).
std::vector<Term> terms_from_residues(const CVector &poles, const CVector &residues,
                                      Index n_half);

}  // namespace espira

#endif  // ESPIRA_ESPIRA1_HPP

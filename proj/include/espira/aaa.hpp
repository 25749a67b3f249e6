// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

///
/// \file aaa.hpp
///
/// Greedy barycentric rational interpolation of the modulated DFT data g_k on the nodes
/// omega^{-k}. Each step moves the worst-fit index from Gamma into the support set S, fills
/// the Loewner matrix over Gamma x S and takes the weights from its smallest right singular
/// vector.
///
#ifndef ESPIRA_AAA_HPP
#define ESPIRA_AAA_HPP

#include "espira/spectral.hpp"

namespace espira
{

struct BarycentricRational
{
  CVector support_nodes;
  CVector support_values;
  CVector weights;

  /// p(z) / q(z); returns the stored value at a support node.
  Complex operator()(Complex z) const;
  CVector operator()(const CVector &z) const;
};

struct AaaOptions
{
  double tol = 1e-13;
  /// Residual tolerance is tol * max|g| when true, tol itself otherwise.
  bool relative = true;
  /// Maximal number of support points; 0 selects N - 1.
  Index jmax = 0;
  /// Also stop once the Loewner matrix has a numerical kernel, sigma_min < kernel_tol * sigma_1,
  /// even if the residual on Gamma is still large. Needed when knots sit on grid nodes.
  bool stop_on_kernel = false;
  /// The residual test can be switched off when only the rank decides, as in the index
  /// selection that precedes the Loewner pencil.
  bool stop_on_residual = true;
  double kernel_tol = 1e-13;
  /// Run exactly this many steps (no early stop) when positive.
  Index fixed_steps = 0;
  /// Impose sum_k w_k g_k = 0 from the second step on, forcing numerator degree < J - 1.
  bool constrained = false;
};

enum class AaaStop
{
  Residual,  // max residual on Gamma fell below the tolerance
  Kernel,    // Loewner kernel detected while some residuals stay large
  Fixed,     // requested number of steps reached
  MaxIterations
};

struct AaaOutput
{
  Index M = 0;  // |S| - 1
  IndexList S;
  IndexList Gamma;
  CVector gS;
  CVector w;
  CVector r_gamma;  // approximant values aligned with Gamma
  std::vector<double> residual_history;
  std::vector<double> sigma_history;  // smallest singular value per step
  std::vector<double> sigma_max_history;
  AaaStop stop = AaaStop::MaxIterations;
  double threshold = 0.0;  // absolute residual tolerance that was applied

  bool converged() const { return stop != AaaStop::MaxIterations; }
  Index iterations() const { return static_cast<Index>(S.size()); }
  BarycentricRational rational(const ModulatedDft &g) const;
};

/// (g_l - g_k) / (omega^{-l} - omega^{-k}) for l in Gamma, k in S.
CMatrix build_loewner(const ModulatedDft &g, const IndexList &Gamma, const IndexList &S);

/// 1 / (row_l - col_k); NodeCollision when a row node equals a column node.
CMatrix build_cauchy(const CVector &row_nodes, const CVector &col_nodes);

/// Right singular vector of the smallest singular value, unit 2-norm.
CVector solve_weights(const CMatrix &L);

/// Unit-norm combination of the two smallest right singular vectors v_J, v_{J-1} with
/// w^T gS = 0. Returns v_J when gS vanishes; throws DegenerateCombination when gS is nonzero
/// but orthogonal (in the bilinear sense) to both vectors.
CVector solve_weights_constrained(const CMatrix &L, const CVector &gS);

Complex barycentric_eval(const BarycentricRational &r, Complex z);

AaaOutput aaa_run(const ModulatedDft &g, const AaaOptions &options);
AaaOutput aaa_run(const ModulatedDft &g, double tol, Index jmax);

}  // namespace espira

#endif  // ESPIRA_AAA_HPP

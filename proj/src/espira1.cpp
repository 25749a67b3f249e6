// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "espira/espira1.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "espira/linalg.hpp"

namespace espira
{

namespace
{

// Grid index k with |z - omega^{-k}| < snap, or -1.
Index nearest_node(Complex z, const ModulatedDft &g, double snap)
{
  const Index n2 = g.nodes.size();
  const double turns = std::arg(z) / (2.0 * std::numbers::pi) * static_cast<double>(n2);
  Index k = static_cast<Index>(std::llround(turns)) % n2;
  if (k < 0)
  {
    k += n2;
  }
  return std::abs(z - g.nodes[k]) < snap ? k : -1;
}

// Residues of the poles against the data rows, with spurious near-zero residues dropped and
// the remaining ones re-fitted until the set is stable.
void fit_residues(CVector &poles, CVector &residues, const ModulatedDft &g, const IndexList &rows,
                  double froissart, double &condition)
{
  CVector nodes(rows.size()), rhs(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    nodes[i] = g.nodes[rows[i]];
    rhs[i] = g.values[rows[i]];
  }
  while (poles.size() > 0)
  {
    const auto ls = least_squares(build_cauchy(nodes, poles), rhs);
    residues = ls.x;
    condition = ls.condition;
    const double amax = residues.cwiseAbs().maxCoeff();
    std::vector<Index> keep;
    for (Index j = 0; j < poles.size(); ++j)
    {
      if (std::abs(residues[j]) > froissart * amax)
      {
        keep.push_back(j);
      }
    }
    if (static_cast<Index>(keep.size()) == poles.size())
    {
      return;
    }
    CVector kept(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
    {
      kept[i] = poles[keep[i]];
    }
    poles = kept;
  }
  residues = CVector(0);
}

}  // namespace

Complex PartialFraction::operator()(Complex z) const
{
  Complex acc(0.0);
  for (Index j = 0; j < poles.size(); ++j)
  {
    acc += residues[j] / (z - poles[j]);
  }
  return acc;
}

CVector poles_from_barycentric(const AaaOutput &out, const ModulatedDft &g)
{
  CVector support(out.S.size());
  for (std::size_t i = 0; i < out.S.size(); ++i)
  {
    support[i] = g.nodes[out.S[i]];
  }
  return arrow_pencil_poles(support, out.w);
}

CVector residues_cauchy(const CVector &poles, const ModulatedDft &g)
{
  if (poles.size() == 0)
  {
    return CVector(0);
  }
  return least_squares(build_cauchy(g.nodes, poles), g.values).x;
}

std::vector<Term> terms_from_residues(const CVector &poles, const CVector &residues,
                                      Index n_half)
{
  std::vector<Term> terms;
  for (Index j = 0; j < poles.size(); ++j)
  {
    terms.push_back({residues[j] / (1.0 - integer_power(poles[j], 2 * n_half)), poles[j]});
  }
  return terms;
}

RecoveryResult espira1_recover(const SampleVector &f, const Espira1Options &options)
{
  const ModulatedDft g = modulated_dft(f);
  const Index n2 = f.size();

  AaaOptions aaa;
  aaa.tol = options.tol;
  aaa.relative = options.relative;
  aaa.jmax = options.jmax;
  aaa.constrained = options.constrained;
  const bool fixed = options.fixed_order > 0;
  if (fixed)
  {
    aaa.fixed_steps = options.fixed_order + 1;
  }
  const bool unit_roots = options.unit_roots && !fixed;
  aaa.stop_on_kernel = unit_roots;
  aaa.kernel_tol = options.tol;
  const AaaOutput out = aaa_run(g, aaa);

  RecoveryResult result;
  result.method = Method::Espira1;
  auto &diag = result.diagnostics;
  diag.iterations = static_cast<int>(out.iterations());
  diag.converged = out.converged();
  diag.sigma_history = out.sigma_history;
  diag.residual_history = out.residual_history;

  // Unit-root indices: zero weights among the supports, large residuals among the rest.
  std::set<Index> sigma;
  std::vector<Index> live;
  const double wmax = out.w.cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < out.S.size(); ++i)
  {
    if (unit_roots && std::abs(out.w[i]) <= options.zero_weight * wmax)
    {
      sigma.insert(out.S[i]);
    }
    else
    {
      live.push_back(static_cast<Index>(i));
    }
  }
  if (unit_roots && out.stop == AaaStop::Kernel)
  {
    const double gmax = g.values.cwiseAbs().maxCoeff();
    for (std::size_t i = 0; i < out.Gamma.size(); ++i)
    {
      const Index k = out.Gamma[i];
      if (std::abs(out.r_gamma[i] - g.values[k]) > options.unit_residual * gmax)
      {
        sigma.insert(k);
      }
    }
  }

  // Poles of the reduced barycentric form; those on grid nodes join the unit-root set.
  CVector poles(0);
  if (live.size() >= 2)
  {
    CVector support(live.size()), weights(live.size());
    for (std::size_t i = 0; i < live.size(); ++i)
    {
      support[i] = g.nodes[out.S[live[i]]];
      weights[i] = out.w[live[i]];
    }
    const CVector raw = arrow_pencil_poles(support, weights);
    std::vector<Complex> kept;
    for (Index j = 0; j < raw.size(); ++j)
    {
      const Index k = unit_roots ? nearest_node(raw[j], g, options.snap) : -1;
      if (k >= 0)
      {
        sigma.insert(k);
      }
      else
      {
        kept.push_back(raw[j]);
      }
    }
    poles = Eigen::Map<CVector>(kept.data(), static_cast<Index>(kept.size()));
  }

  IndexList rows;
  for (Index k = 0; k < n2; ++k)
  {
    if (!sigma.count(k))
    {
      rows.push_back(k);
    }
  }
  CVector residues(0);
  double condition = 0.0;
  fit_residues(poles, residues, g, rows, options.froissart, condition);
  diag.coefficient_condition = condition;
  diag.cauchy_coefficients = true;

  std::vector<Term> terms = terms_from_residues(poles, residues, f.n_half());
  const PartialFraction r1{poles, residues};
  const double gmax = g.values.cwiseAbs().maxCoeff();
  for (Index k : sigma)
  {
    // g_k = omega^k fhat_k and a grid knot omega^{-k} contributes 2N gamma to fhat_k.
    const Complex gamma = (g.values[k] - r1(g.nodes[k])) * g.nodes[k] / static_cast<double>(n2);
    // An index flagged by noise alone carries no mass once the rational part is removed.
    if (std::abs(gamma) * static_cast<double>(n2) > options.unit_residual * gmax)
    {
      terms.push_back({gamma, g.nodes[k]});
      diag.unit_root_indices.push_back(k);
    }
  }
  result.estimate = ExponentialSum(std::move(terms));
  diag.numerical_rank = result.estimate.order();
  return result;
}

RecoveryResult espira1_recover(const SampleVector &f, double tol)
{
  Espira1Options options;
  options.tol = tol;
  return espira1_recover(f, options);
}

}  // namespace espira

// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "espira/aaa.hpp"

#include <cmath>
#include <limits>

#include "espira/kernels.hpp"
#include "espira/linalg.hpp"

namespace espira
{

namespace
{

CVector gather(const CVector &v, const IndexList &idx)
{
  CVector out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
  {
    out[i] = v[idx[i]];
  }
  return out;
}

// Position in Gamma of the largest entry of `score`; ties go to the lowest index value.
std::size_t argmax_position(const IndexList &Gamma, const std::vector<double> &score)
{
  std::size_t best = 0;
  for (std::size_t i = 1; i < Gamma.size(); ++i)
  {
    if (score[i] > score[best] || (score[i] == score[best] && Gamma[i] < Gamma[best]))
    {
      best = i;
    }
  }
  return best;
}

}  // namespace

Complex BarycentricRational::operator()(Complex z) const
{
  CVector pt(1);
  pt[0] = z;
  return kernels::barycentric(support_nodes, support_values, weights, pt)[0];
}

CVector BarycentricRational::operator()(const CVector &z) const
{
  return kernels::barycentric(support_nodes, support_values, weights, z);
}

BarycentricRational AaaOutput::rational(const ModulatedDft &g) const
{
  return {gather(g.nodes, S), gS, w};
}

CMatrix build_loewner(const ModulatedDft &g, const IndexList &Gamma, const IndexList &S)
{
  return kernels::loewner(g.values, g.nodes, Gamma, S);
}

CMatrix build_cauchy(const CVector &row_nodes, const CVector &col_nodes)
{
  return kernels::cauchy(row_nodes, col_nodes);
}

CVector solve_weights(const CMatrix &L)
{
  require(L.cols() >= 1, ErrorCode::InvalidArgument, "Loewner matrix has no columns");
  if (L.rows() == 0)
  {
    CVector w = CVector::Zero(L.cols());
    w[L.cols() - 1] = 1.0;
    return w;
  }
  const SvdResult s = svd(L, SvdParts::RightOnly);
  return s.V_h.row(L.cols() - 1).adjoint();
}

CVector solve_weights_constrained(const CMatrix &L, const CVector &gS)
{
  require(L.cols() >= 2, ErrorCode::InvalidArgument, "constrained weights need two columns");
  require(gS.size() == L.cols(), ErrorCode::InvalidArgument, "support value count mismatch");
  const SvdResult s = svd(L, SvdParts::RightOnly);
  const Index J = L.cols();
  const CVector vJ = s.V_h.row(J - 1).adjoint();
  const CVector vJ1 = s.V_h.row(J - 2).adjoint();
  const double gnorm = gS.norm();
  if (gnorm == 0.0)
  {
    return vJ;
  }
  const Complex a = vJ1.transpose() * gS;
  const Complex b = vJ.transpose() * gS;
  // Moduli in the denominator: with complex projections the squared form can cancel.
  const double scale = std::sqrt(std::norm(a) + std::norm(b));
  require(scale > 1e-14 * gnorm, ErrorCode::DegenerateCombination,
          "support values are orthogonal to both trailing singular vectors");
  CVector w = (a * vJ - b * vJ1) / scale;
  return w / w.norm();
}

Complex barycentric_eval(const BarycentricRational &r, Complex z)
{
  return r(z);
}

AaaOutput aaa_run(const ModulatedDft &g, const AaaOptions &options)
{
  const Index n2 = g.values.size();
  const Index n = n2 / 2;
  require(options.tol > 0.0, ErrorCode::InvalidArgument, "tol must be positive");
  const Index jmax = options.fixed_steps > 0 ? options.fixed_steps
                                             : (options.jmax > 0 ? options.jmax : n - 1);
  require(jmax >= 1 && jmax < n2, ErrorCode::InvalidArgument,
          "jmax must be at least 1 and leave Gamma nonempty");

  AaaOutput out;
  const double gmax = g.values.cwiseAbs().maxCoeff();
  out.threshold = options.relative ? options.tol * gmax : options.tol;
  out.Gamma.resize(n2);
  for (Index k = 0; k < n2; ++k)
  {
    out.Gamma[k] = k;
  }
  std::vector<double> score(n2);
  for (Index k = 0; k < n2; ++k)
  {
    score[k] = std::abs(g.values[k]);
  }

  for (Index j = 1; j <= jmax; ++j)
  {
    const std::size_t pos = argmax_position(out.Gamma, score);
    out.S.push_back(out.Gamma[pos]);
    out.Gamma.erase(out.Gamma.begin() + pos);
    out.gS = gather(g.values, out.S);

    const CMatrix L = build_loewner(g, out.Gamma, out.S);
    const SvdResult s = svd(L, SvdParts::RightOnly);
    out.sigma_history.push_back(s.singular_values[s.singular_values.size() - 1]);
    out.sigma_max_history.push_back(s.singular_values[0]);
    if (j >= 2 && options.constrained)
    {
      out.w = solve_weights_constrained(L, out.gS);
    }
    else
    {
      out.w = s.V_h.row(j - 1).adjoint();
    }
    // Singular values are reported per column count; a 1-row L has only one.
    if (L.rows() < L.cols())
    {
      out.sigma_history.back() = 0.0;
    }

    const CMatrix C = build_cauchy(gather(g.nodes, out.Gamma), gather(g.nodes, out.S));
    const CVector q = C * out.w;
    const CVector p = C * out.w.cwiseProduct(out.gS);
    out.r_gamma.resize(out.Gamma.size());
    score.assign(out.Gamma.size(), 0.0);
    double residual = 0.0;
    for (std::size_t i = 0; i < out.Gamma.size(); ++i)
    {
      if (std::abs(q[i]) < 1e-300)
      {
        out.r_gamma[i] = std::numeric_limits<double>::infinity();
        score[i] = std::numeric_limits<double>::infinity();
      }
      else
      {
        out.r_gamma[i] = p[i] / q[i];
        score[i] = std::abs(out.r_gamma[i] - g.values[out.Gamma[i]]);
        if (!std::isfinite(score[i]))
        {
          score[i] = std::numeric_limits<double>::infinity();
        }
      }
      residual = std::max(residual, score[i]);
    }
    out.residual_history.push_back(residual);

    if (options.fixed_steps > 0)
    {
      if (j == options.fixed_steps)
      {
        out.stop = AaaStop::Fixed;
      }
      continue;
    }
    if (options.stop_on_residual && (residual < out.threshold || residual == 0.0))
    {
      out.stop = AaaStop::Residual;
      break;
    }
    if (options.stop_on_kernel && j >= 2 && out.sigma_max_history.back() > 0.0 &&
        out.sigma_history.back() < options.kernel_tol * out.sigma_max_history.back())
    {
      out.stop = AaaStop::Kernel;
      break;
    }
  }
  out.M = static_cast<Index>(out.S.size()) - 1;
  return out;
}

AaaOutput aaa_run(const ModulatedDft &g, double tol, Index jmax)
{
  AaaOptions options;
  options.tol = tol;
  options.jmax = jmax;
  return aaa_run(g, options);
}

}  // namespace espira

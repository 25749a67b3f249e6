// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "espira/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <omp.h>

namespace espira::kernels
{

namespace
{

// Grid kernels advance z^t by a constant ratio inside short blocks and restart from an exact
// exp() at every block boundary, which bounds the accumulated rounding to a few dozen ulps.
constexpr Index kBlock = 32;

Index grid_count(double t_max, double step)
{
  require(step > 0.0 && t_max >= 0.0, ErrorCode::InvalidArgument, "grid needs step > 0");
  return static_cast<Index>(std::floor(t_max / step + 1e-9)) + 1;
}

std::vector<Complex> logs_of(const std::vector<Term> &terms)
{
  std::vector<Complex> out;
  out.reserve(terms.size());
  for (const auto &term : terms)
  {
    out.push_back(std::log(term.z));
  }
  return out;
}

// Fills block [begin, end) of the grid with sum_j gamma_j exp(t log z_j).
void eval_block(const std::vector<Term> &terms, const std::vector<Complex> &logs, double t0,
                double step, Index begin, Index end, Complex *out)
{
  std::fill(out, out + (end - begin), Complex(0.0));
  for (std::size_t j = 0; j < terms.size(); ++j)
  {
    Complex p = terms[j].gamma * std::exp((t0 + begin * step) * logs[j]);
    const Complex ratio = std::exp(step * logs[j]);
    for (Index i = begin; i < end; ++i)
    {
      out[i - begin] += p;
      p *= ratio;
    }
  }
}

}  // namespace

int thread_count()
{
  if (const char *env = std::getenv("ESPIRA_THREADS"))
  {
    const int n = std::atoi(env);
    if (n > 0)
    {
      return n;
    }
  }
  return omp_get_max_threads();
}

CMatrix loewner(const CVector &values, const CVector &nodes, const IndexList &rows,
                const IndexList &cols)
{
  const Index m = static_cast<Index>(rows.size());
  const Index n = static_cast<Index>(cols.size());
  CMatrix out(m, n);
#pragma omp parallel for schedule(static) num_threads(thread_count()) if (m * n > 4096)
  for (Index i = 0; i < m; ++i)
  {
    const Complex gl = values[rows[i]];
    const Complex xl = nodes[rows[i]];
    for (Index k = 0; k < n; ++k)
    {
      out(i, k) = (gl - values[cols[k]]) / (xl - nodes[cols[k]]);
    }
  }
  return out;
}

CMatrix cauchy(const CVector &row_nodes, const CVector &col_nodes)
{
  const Index m = row_nodes.size();
  const Index n = col_nodes.size();
  CMatrix out(m, n);
  bool collision = false;
#pragma omp parallel for schedule(static) num_threads(thread_count()) if (m * n > 4096) \
  reduction(|| : collision)
  for (Index i = 0; i < m; ++i)
  {
    for (Index k = 0; k < n; ++k)
    {
      const Complex d = row_nodes[i] - col_nodes[k];
      collision = collision || d == Complex(0.0);
      out(i, k) = 1.0 / d;
    }
  }
  require(!collision, ErrorCode::NodeCollision, "Cauchy matrix row node equals a column node");
  return out;
}

CVector barycentric(const CVector &support, const CVector &values, const CVector &weights,
                    const CVector &points)
{
  const Index n = points.size();
  CVector out(n);
#pragma omp parallel for schedule(static) num_threads(thread_count()) \
  if (n * support.size() > 4096)
  for (Index i = 0; i < n; ++i)
  {
    Complex num(0.0), den(0.0);
    bool hit = false;
    for (Index k = 0; k < support.size(); ++k)
    {
      const Complex d = points[i] - support[k];
      if (d == Complex(0.0))
      {
        out[i] = values[k];
        hit = true;
        break;
      }
      const Complex c = weights[k] / d;
      num += c * values[k];
      den += c;
    }
    if (!hit)
    {
      out[i] = num / den;
    }
  }
  return out;
}

CVector evaluate_grid(const std::vector<Term> &terms, double t0, double step, Index count)
{
  CVector out(count);
  const auto logs = logs_of(terms);
  const Index blocks = (count + kBlock - 1) / kBlock;
#pragma omp parallel for schedule(static) num_threads(thread_count()) if (blocks > 8)
  for (Index b = 0; b < blocks; ++b)
  {
    const Index begin = b * kBlock;
    const Index end = std::min(count, begin + kBlock);
    eval_block(terms, logs, t0, step, begin, end, out.data() + begin);
  }
  return out;
}

GridMaxima grid_maxima(const std::vector<Term> &f, const std::vector<Term> &g, double t_max,
                       double step)
{
  const Index count = grid_count(t_max, step);
  const auto logs_f = logs_of(f);
  const auto logs_g = logs_of(g);
  const Index blocks = (count + kBlock - 1) / kBlock;
  double max_ref = 0.0, max_diff = 0.0;
#pragma omp parallel for schedule(static) num_threads(thread_count()) if (blocks > 8) \
  reduction(max : max_ref, max_diff)
  for (Index b = 0; b < blocks; ++b)
  {
    Complex vf[kBlock], vg[kBlock];
    const Index begin = b * kBlock;
    const Index end = std::min(count, begin + kBlock);
    eval_block(f, logs_f, 0.0, step, begin, end, vf);
    eval_block(g, logs_g, 0.0, step, begin, end, vg);
    for (Index i = 0; i < end - begin; ++i)
    {
      max_ref = std::max(max_ref, std::abs(vf[i]));
      max_diff = std::max(max_diff, std::abs(vf[i] - vg[i]));
    }
  }
  return {max_ref, max_diff};
}

namespace serial
{

CMatrix loewner(const CVector &values, const CVector &nodes, const IndexList &rows,
                const IndexList &cols)
{
  CMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    for (std::size_t k = 0; k < cols.size(); ++k)
    {
      out(i, k) = (values[rows[i]] - values[cols[k]]) / (nodes[rows[i]] - nodes[cols[k]]);
    }
  }
  return out;
}

CMatrix cauchy(const CVector &row_nodes, const CVector &col_nodes)
{
  CMatrix out(row_nodes.size(), col_nodes.size());
  for (Index i = 0; i < row_nodes.size(); ++i)
  {
    for (Index k = 0; k < col_nodes.size(); ++k)
    {
      const Complex d = row_nodes[i] - col_nodes[k];
      require(d != Complex(0.0), ErrorCode::NodeCollision,
              "Cauchy matrix row node equals a column node");
      out(i, k) = 1.0 / d;
    }
  }
  return out;
}

CVector barycentric(const CVector &support, const CVector &values, const CVector &weights,
                    const CVector &points)
{
  CVector out(points.size());
  for (Index i = 0; i < points.size(); ++i)
  {
    Complex num(0.0), den(0.0);
    Index hit = -1;
    for (Index k = 0; k < support.size() && hit < 0; ++k)
    {
      const Complex d = points[i] - support[k];
      if (d == Complex(0.0))
      {
        hit = k;
      }
      else
      {
        num += weights[k] * values[k] / d;
        den += weights[k] / d;
      }
    }
    out[i] = hit >= 0 ? values[hit] : num / den;
  }
  return out;
}

CVector evaluate_grid(const std::vector<Term> &terms, double t0, double step, Index count)
{
  CVector out = CVector::Zero(count);
  for (Index i = 0; i < count; ++i)
  {
    const double t = t0 + i * step;
    for (const auto &term : terms)
    {
      out[i] += term.gamma * std::exp(t * std::log(term.z));
    }
  }
  return out;
}

GridMaxima grid_maxima(const std::vector<Term> &f, const std::vector<Term> &g, double t_max,
                       double step)
{
  const Index count = grid_count(t_max, step);
  GridMaxima out;
  for (Index i = 0; i < count; ++i)
  {
    const double t = i * step;
    Complex vf(0.0), vg(0.0);
    for (const auto &term : f)
    {
      vf += term.gamma * std::exp(t * std::log(term.z));
    }
    for (const auto &term : g)
    {
      vg += term.gamma * std::exp(t * std::log(term.z));
    }
    out.max_reference = std::max(out.max_reference, std::abs(vf));
    out.max_difference = std::max(out.max_difference, std::abs(vf - vg));
  }
  return out;
}

}  // namespace serial

}  // namespace espira::kernels

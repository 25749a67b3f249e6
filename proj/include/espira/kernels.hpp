// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

///
/// \file kernels.hpp
///
/// Data-parallel inner loops shared by the recovery algorithms and the error metrics. The
/// functions in espira::kernels use OpenMP; espira::kernels::serial holds straightforward
/// single-threaded versions that the tests compare against and the benchmarks time.
///
#ifndef ESPIRA_KERNELS_HPP
#define ESPIRA_KERNELS_HPP

#include "espira/model.hpp"

namespace espira::kernels
{

/// Thread budget: ESPIRA_THREADS if set and positive, otherwise the OpenMP default.
int thread_count();

/// (values_l - values_k) / (nodes_l - nodes_k) for l in rows, k in cols.
CMatrix loewner(const CVector &values, const CVector &nodes, const IndexList &rows,
                const IndexList &cols);

/// 1 / (row_l - col_k). Throws NodeCollision if a row node equals a column node.
CMatrix cauchy(const CVector &row_nodes, const CVector &col_nodes);

/// Barycentric quotient sum_k w_k v_k / (x - s_k) over sum_k w_k / (x - s_k) at every point.
/// A point that coincides with a support node returns the stored value there.
CVector barycentric(const CVector &support, const CVector &values, const CVector &weights,
                    const CVector &points);

/// Samples sum_j gamma_j z_j^t at t = t0 + i * step, i = 0..count-1.
CVector evaluate_grid(const std::vector<Term> &terms, double t0, double step, Index count);

struct GridMaxima
{
  double max_reference = 0.0;   // max |f|
  double max_difference = 0.0;  // max |f - g|
};

/// Maxima of |f| and |f - g| over t = i * step, 0 <= t <= t_max, for two exponential sums
/// given as term lists. Never materializes the grid.
GridMaxima grid_maxima(const std::vector<Term> &f, const std::vector<Term> &g, double t_max,
                       double step);

namespace serial
{

CMatrix loewner(const CVector &values, const CVector &nodes, const IndexList &rows,
                const IndexList &cols);
CMatrix cauchy(const CVector &row_nodes, const CVector &col_nodes);
CVector barycentric(const CVector &support, const CVector &values, const CVector &weights,
                    const CVector &points);
CVector evaluate_grid(const std::vector<Term> &terms, double t0, double step, Index count);
GridMaxima grid_maxima(const std::vector<Term> &f, const std::vector<Term> &g, double t_max,
                       double step);

}  // namespace serial

}  // namespace espira::kernels

#endif  // ESPIRA_KERNELS_HPP

// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "espira/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "espira/kernels.hpp"

namespace espira
{

ExponentialSum::ExponentialSum(std::vector<Term> terms) : terms_(std::move(terms))
{
  for (std::size_t i = 0; i < terms_.size(); ++i)
  {
    require(terms_[i].gamma != Complex(0.0), ErrorCode::InvalidArgument,
            "exponential sum has a zero coefficient");
    require(terms_[i].z != Complex(0.0), ErrorCode::InvalidArgument,
            "exponential sum has a zero knot");
    require(std::isfinite(std::abs(terms_[i].gamma)) && std::isfinite(std::abs(terms_[i].z)),
            ErrorCode::InvalidArgument, "exponential sum has a non-finite parameter");
    for (std::size_t k = 0; k < i; ++k)
    {
      require(terms_[i].z != terms_[k].z, ErrorCode::DuplicateNodes,
              "exponential sum knots must be pairwise distinct");
    }
  }
}

ExponentialSum ExponentialSum::from_frequencies(const std::vector<Complex> &gamma,
                                                const std::vector<Complex> &phi)
{
  require(gamma.size() == phi.size(), ErrorCode::OrderMismatch,
          "coefficient and frequency counts differ");
  std::vector<Term> terms;
  for (std::size_t j = 0; j < gamma.size(); ++j)
  {
    terms.push_back({gamma[j], std::exp(phi[j])});
  }
  return ExponentialSum(std::move(terms));
}

std::vector<Complex> ExponentialSum::knots() const
{
  std::vector<Complex> out;
  for (const auto &t : terms_)
  {
    out.push_back(t.z);
  }
  return out;
}

std::vector<Complex> ExponentialSum::coefficients() const
{
  std::vector<Complex> out;
  for (const auto &t : terms_)
  {
    out.push_back(t.gamma);
  }
  return out;
}

std::vector<Complex> ExponentialSum::frequencies() const
{
  std::vector<Complex> out;
  for (const auto &t : terms_)
  {
    out.push_back(std::log(t.z));
  }
  return out;
}

SampleVector::SampleVector(CVector values) : values_(std::move(values))
{
  require(values_.size() >= 2, ErrorCode::InvalidArgument, "need at least two samples");
  require(values_.size() % 2 == 0, ErrorCode::OddLength, "sample count must be even");
}

Complex integer_power(Complex z, long long k)
{
  if (k < 0)
  {
    return 1.0 / integer_power(z, -k);
  }
  Complex result(1.0);
  while (k > 0)
  {
    if (k & 1)
    {
      result *= z;
    }
    z *= z;
    k >>= 1;
  }
  return result;
}

Complex evaluate(const ExponentialSum &sum, double t)
{
  Complex out(0.0);
  const double ti = std::round(t);
  const bool integral = ti == t && std::abs(t) < 9.0e15;
  for (const auto &term : sum.terms())
  {
    out += term.gamma * (integral ? integer_power(term.z, static_cast<long long>(ti))
                                  : std::exp(t * std::log(term.z)));
  }
  return out;
}

SampleVector sample(const ExponentialSum &sum, Index n_half)
{
  require(n_half >= 1, ErrorCode::InvalidArgument, "N must be positive");
  CVector values(2 * n_half);
  for (Index k = 0; k < 2 * n_half; ++k)
  {
    values[k] = evaluate(sum, static_cast<double>(k));
  }
  return SampleVector(std::move(values));
}

namespace
{

// Square assignment problem (Kuhn-Munkres with potentials). Returns row -> column.
std::vector<Index> hungarian(const Eigen::MatrixXd &cost)
{
  const Index n = cost.rows();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<Index> p(n + 1, 0), way(n + 1, 0);
  for (Index i = 1; i <= n; ++i)
  {
    p[0] = i;
    Index j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do
    {
      used[j0] = 1;
      const Index i0 = p[j0];
      double delta = inf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j)
      {
        if (used[j])
        {
          continue;
        }
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j])
        {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta)
        {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j)
      {
        if (used[j])
        {
          u[p[j]] += delta;
          v[j] -= delta;
        }
        else
        {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do
    {
      const Index j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<Index> row_to_col(n, 0);
  for (Index j = 1; j <= n; ++j)
  {
    row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

double relative_max(const std::vector<double> &diff, const std::vector<double> &ref)
{
  const double num = diff.empty() ? 0.0 : *std::max_element(diff.begin(), diff.end());
  const double den = ref.empty() ? 0.0 : *std::max_element(ref.begin(), ref.end());
  if (num == 0.0)
  {
    return 0.0;
  }
  return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<Index> match_terms(const ExponentialSum &truth, const ExponentialSum &recovered)
{
  require(truth.order() == recovered.order(), ErrorCode::OrderMismatch,
          "recovered order differs from the true order");
  const Index m = truth.order();
  Eigen::MatrixXd cost(m, m);
  for (Index i = 0; i < m; ++i)
  {
    for (Index j = 0; j < m; ++j)
    {
      cost(i, j) = std::abs(truth.terms()[i].z - recovered.terms()[j].z);
    }
  }
  return m == 0 ? std::vector<Index>{} : hungarian(cost);
}

ErrorReport match_and_errors(const ExponentialSum &truth, const ExponentialSum &recovered,
                             Index n_half, double grid_step)
{
  const auto pairing = match_terms(truth, recovered);
  std::vector<double> dz, dre, dim, dphi, dgamma, rz, rre, rim, rphi, rgamma;
  for (Index i = 0; i < truth.order(); ++i)
  {
    const Term &a = truth.terms()[i];
    const Term &b = recovered.terms()[pairing[i]];
    dz.push_back(std::abs(a.z - b.z));
    dre.push_back(std::abs(a.z.real() - b.z.real()));
    dim.push_back(std::abs(a.z.imag() - b.z.imag()));
    dphi.push_back(std::abs(std::log(a.z) - std::log(b.z)));
    dgamma.push_back(std::abs(a.gamma - b.gamma));
    rz.push_back(std::abs(a.z));
    rre.push_back(std::abs(a.z.real()));
    rim.push_back(std::abs(a.z.imag()));
    rphi.push_back(std::abs(std::log(a.z)));
    rgamma.push_back(std::abs(a.gamma));
  }
  ErrorReport report;
  report.e_z = relative_max(dz, rz);
  report.e_re_z = relative_max(dre, rre);
  report.e_im_z = relative_max(dim, rim);
  report.e_phi = relative_max(dphi, rphi);
  report.e_gamma = relative_max(dgamma, rgamma);
  const auto grid = kernels::grid_maxima(truth.terms(), recovered.terms(),
                                         static_cast<double>(2 * n_half - 1), grid_step);
  report.e_f = grid.max_difference == 0.0 ? 0.0 : grid.max_difference / grid.max_reference;
  return report;
}

std::string to_string(Method method)
{
  switch (method)
  {
    case Method::Espira1:
      return "espira1";
    case Method::Espira2:
      return "espira2";
    case Method::Mpm:
      return "mpm";
    case Method::Esprit:
      return "esprit";
  }
  return "unknown";
}

Method parse_method(const std::string &name)
{
  for (Method m : {Method::Espira1, Method::Espira2, Method::Mpm, Method::Esprit})
  {
    if (to_string(m) == name)
    {
      return m;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + name + "'");
}

}  // namespace espira

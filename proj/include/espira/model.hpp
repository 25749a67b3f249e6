// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

///
/// \file model.hpp
///
/// Exponential sums f(t) = sum_j gamma_j z_j^t, their equidistant samples, recovery
/// results and the relative error metrics used to score a recovery.
///
#ifndef ESPIRA_MODEL_HPP
#define ESPIRA_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "espira/types.hpp"

namespace espira
{

struct Term
{
  Complex gamma;
  Complex z;
};

///
/// An M-term exponential sum. Construction validates that every coefficient and knot is
/// nonzero and that the knots are pairwise distinct.
///
class ExponentialSum
{
public:
  ExponentialSum() = default;
  explicit ExponentialSum(std::vector<Term> terms);

  /// Builds the sum from frequencies phi_j, i.e. z_j = exp(phi_j).
  static ExponentialSum from_frequencies(const std::vector<Complex> &gamma,
                                         const std::vector<Complex> &phi);

  Index order() const { return static_cast<Index>(terms_.size()); }
  bool empty() const { return terms_.empty(); }
  const std::vector<Term> &terms() const { return terms_; }

  std::vector<Complex> knots() const;
  std::vector<Complex> coefficients() const;
  /// Principal logarithms of the knots.
  std::vector<Complex> frequencies() const;

private:
  std::vector<Term> terms_;
};

/// 2N equidistant samples f(0), ..., f(2N-1).
class SampleVector
{
public:
  SampleVector() = default;
  explicit SampleVector(CVector values);

  const CVector &values() const { return values_; }
  Index size() const { return values_.size(); }
  Index n_half() const { return values_.size() / 2; }
  Complex operator[](Index k) const { return values_[k]; }

private:
  CVector values_;
};

/// z^k by repeated squaring; exact branch-free power for integer k.
Complex integer_power(Complex z, long long k);

/// sum_j gamma_j z_j^t; non-integer t uses the principal branch z^t = exp(t Log z).
Complex evaluate(const ExponentialSum &sum, double t);

SampleVector sample(const ExponentialSum &sum, Index n_half);

struct ErrorReport
{
  double e_f = 0.0;
  double e_z = 0.0;
  double e_phi = 0.0;
  double e_gamma = 0.0;
  // Componentwise knot errors reported in the noisy-data tables.
  double e_re_z = 0.0;
  double e_im_z = 0.0;
};

///
/// Minimum-cost assignment of recovered terms to true terms on |z - z~|. Returns
/// `pairing[i]` = index of the recovered term matched to true term i.
///
std::vector<Index> match_terms(const ExponentialSum &truth, const ExponentialSum &recovered);

///
/// Relative errors after assignment matching. e_f is the maximum of |f - f~| / max|f| on the
/// grid t = 0, step, 2 step, ... over [0, 2N-1]; `n_half` fixes the grid extent.
///
ErrorReport match_and_errors(const ExponentialSum &truth, const ExponentialSum &recovered,
                             Index n_half, double grid_step = 1e-3);

enum class Method
{
  Espira1,
  Espira2,
  Mpm,
  Esprit
};

std::string to_string(Method method);
Method parse_method(const std::string &name);

struct RecoveryDiagnostics
{
  int iterations = 0;
  bool converged = true;
  std::vector<double> sigma_history;   // smallest singular value per greedy step
  std::vector<double> residual_history;
  IndexList unit_root_indices;         // DFT indices k with z = omega^{-k}
  Index numerical_rank = 0;
  double coefficient_condition = 0.0;  // condition of the coefficient system that was solved
  bool cauchy_coefficients = false;
};

struct RecoveryResult
{
  ExponentialSum estimate;
  Method method = Method::Espira1;
  RecoveryDiagnostics diagnostics;
};

}  // namespace espira

#endif  // ESPIRA_MODEL_HPP

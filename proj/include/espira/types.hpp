// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ESPIRA_TYPES_HPP
#define ESPIRA_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace espira
{

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Ordered index set into {0, ..., 2N-1}. Order matters: it fixes the row/column order of
// the Loewner and Cauchy matrices.
using IndexList = std::vector<Index>;

enum class ErrorCode
{
  InvalidArgument,
  OrderMismatch,
  OddLength,
  ConvergenceFailure,
  DegenerateWeights,
  DuplicateNodes,
  NodeCollision,
  DegenerateCombination,
  MaxIterations,
  RankZero,
  BadWindow,
  OutOfRange,
  ZeroNoise,
  Io
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const char *what)
{
  if (!condition)
  {
    throw Error(code, what);
  }
}

}  // namespace espira

#endif  // ESPIRA_TYPES_HPP

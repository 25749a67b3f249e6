// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "espira/types.hpp"

namespace espira
{

std::string_view to_string(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::OrderMismatch:
      return "OrderMismatch";
    case ErrorCode::OddLength:
      return "OddLength";
    case ErrorCode::ConvergenceFailure:
      return "ConvergenceFailure";
    case ErrorCode::DegenerateWeights:
      return "DegenerateWeights";
    case ErrorCode::DuplicateNodes:
      return "DuplicateNodes";
    case ErrorCode::NodeCollision:
      return "NodeCollision";
    case ErrorCode::DegenerateCombination:
      return "DegenerateCombination";
    case ErrorCode::MaxIterations:
      return "MaxIterations";
    case ErrorCode::RankZero:
      return "RankZero";
    case ErrorCode::BadWindow:
      return "BadWindow";
    case ErrorCode::OutOfRange:
      return "OutOfRange";
    case ErrorCode::ZeroNoise:
      return "ZeroNoise";
    case ErrorCode::Io:
      return "Io";
  }
  return "Unknown";
}

}  // namespace espira

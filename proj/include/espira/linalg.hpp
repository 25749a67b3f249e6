// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

///
/// \file linalg.hpp
///
/// Dense complex factorizations used by the recovery methods, the structured Vandermonde and
/// Q-matrices, and the arrow pencil that yields barycentric poles.
///
#ifndef ESPIRA_LINALG_HPP
#define ESPIRA_LINALG_HPP

#include "espira/types.hpp"

namespace espira
{

// Singular values below this fraction of sigma_1 are treated as zero by every pseudoinverse.
inline constexpr double kPinvCutoff = 1e-13;

enum class SvdParts
{
  Full,      // U (m x m), V_h (n x n)
  Thin,      // U (m x k), V_h (k x n), k = min(m, n)
  RightOnly  // V_h (n x n) only; U left empty
};

struct SvdResult
{
  CMatrix U;
  RVector singular_values;  // nonincreasing
  CMatrix V_h;
};

SvdResult svd(const CMatrix &A, SvdParts parts = SvdParts::Full);
RVector singular_values(const CMatrix &A);

struct PivotedQr
{
  CMatrix Q;
  CMatrix R;
  IndexList perm;  // A.col(perm[j]) is the j-th column of A P
};

/// A P = Q R with |R(0,0)| >= |R(1,1)| >= ... ; Q is skipped when compute_q is false.
PivotedQr qr_col_pivot(const CMatrix &A, bool compute_q = true);

/// Only |R(k,k)| of the pivoted QR, for rank decisions without forming Q.
RVector pivoted_qr_diagonal(const CMatrix &A);

struct LeastSquaresSolution
{
  CVector x;
  double condition = 0.0;  // sigma_1 / sigma_min of A (infinite if rank deficient)
  Index rank = 0;
};

/// Pseudoinverse solution of min ||Ax - b||, singular values below cutoff * sigma_1 dropped.
LeastSquaresSolution least_squares(const CMatrix &A, const CVector &b,
                                   double cutoff = kPinvCutoff);

CMatrix pinv(const CMatrix &A, double cutoff = kPinvCutoff);

CVector eig_general(const CMatrix &A);

/// Zeros of the barycentric denominator sum_j w_j / (z - s_j): the finite eigenvalues of the
/// arrow pencil. The pencil is reduced to a standard eigenproblem of order m by a unitary
/// similarity that splits off the spurious zero eigenvalue.
CVector arrow_pencil_poles(const CVector &support, const CVector &weights);

/// K x L matrix whose row l holds the ascending monomial coefficients of
/// prod_{n != l} (z - u_n), zero padded.
CMatrix build_q_matrix(const CVector &u, Index L);

/// rows x M matrix (z_j^k), k = 0..rows-1.
CMatrix vandermonde(const CVector &z, Index rows);

/// 2-norm condition number from the singular values.
double condition_number(const CMatrix &A);

}  // namespace espira

#endif  // ESPIRA_LINALG_HPP

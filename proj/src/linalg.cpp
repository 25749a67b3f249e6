// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "espira/linalg.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "espira/model.hpp"

namespace espira
{

namespace
{

// One-sided Jacobi is accurate for the small, badly graded matrices the greedy methods
// produce; divide and conquer takes over for the large Hankel matrices.
constexpr Index kJacobiLimit = 64;

using Jacobi = Eigen::JacobiSVD<CMatrix, Eigen::ColPivHouseholderQRPreconditioner>;
using Bdc = Eigen::BDCSVD<CMatrix>;

unsigned int eigen_options(SvdParts parts)
{
  switch (parts)
  {
    case SvdParts::Full:
      return Eigen::ComputeFullU | Eigen::ComputeFullV;
    case SvdParts::Thin:
      return Eigen::ComputeThinU | Eigen::ComputeThinV;
    case SvdParts::RightOnly:
      return Eigen::ComputeFullV;
  }
  return 0;
}

template <typename Solver>
SvdResult unpack(const Solver &solver, SvdParts parts)
{
  require(solver.info() == Eigen::Success, ErrorCode::ConvergenceFailure, "SVD did not converge");
  SvdResult out;
  out.singular_values = solver.singularValues();
  require(out.singular_values.allFinite(), ErrorCode::ConvergenceFailure,
          "SVD produced non-finite singular values");
  if (parts != SvdParts::RightOnly)
  {
    out.U = solver.matrixU();
  }
  out.V_h = solver.matrixV().adjoint();
  return out;
}

}  // namespace

SvdResult svd(const CMatrix &A, SvdParts parts)
{
  require(A.rows() >= 1 && A.cols() >= 1, ErrorCode::InvalidArgument, "empty matrix");
  require(A.allFinite(), ErrorCode::ConvergenceFailure, "matrix has non-finite entries");
  if (std::min(A.rows(), A.cols()) <= kJacobiLimit)
  {
    return unpack(Jacobi(A, eigen_options(parts)), parts);
  }
  return unpack(Bdc(A, eigen_options(parts)), parts);
}

RVector singular_values(const CMatrix &A)
{
  require(A.rows() >= 1 && A.cols() >= 1, ErrorCode::InvalidArgument, "empty matrix");
  require(A.allFinite(), ErrorCode::ConvergenceFailure, "matrix has non-finite entries");
  if (std::min(A.rows(), A.cols()) <= kJacobiLimit)
  {
    Jacobi solver(A);
    require(solver.info() == Eigen::Success, ErrorCode::ConvergenceFailure,
            "SVD did not converge");
    return solver.singularValues();
  }
  Bdc solver(A);
  require(solver.info() == Eigen::Success, ErrorCode::ConvergenceFailure, "SVD did not converge");
  return solver.singularValues();
}

PivotedQr qr_col_pivot(const CMatrix &A, bool compute_q)
{
  require(A.rows() >= 1 && A.cols() >= 1, ErrorCode::InvalidArgument, "empty matrix");
  Eigen::ColPivHouseholderQR<CMatrix> qr(A);
  PivotedQr out;
  out.R = qr.matrixR().triangularView<Eigen::Upper>();
  if (compute_q)
  {
    out.Q = qr.householderQ();
  }
  const auto &indices = qr.colsPermutation().indices();
  out.perm.assign(indices.data(), indices.data() + indices.size());
  return out;
}

RVector pivoted_qr_diagonal(const CMatrix &A)
{
  Eigen::ColPivHouseholderQR<CMatrix> qr(A);
  const Index k = std::min(A.rows(), A.cols());
  RVector d(k);
  for (Index i = 0; i < k; ++i)
  {
    d[i] = std::abs(qr.matrixQR()(i, i));
  }
  return d;
}

LeastSquaresSolution least_squares(const CMatrix &A, const CVector &b, double cutoff)
{
  require(A.rows() == b.size(), ErrorCode::InvalidArgument, "least squares size mismatch");
  LeastSquaresSolution out;
  if (A.cols() == 0)
  {
    out.x = CVector(0);
    return out;
  }
  const SvdResult s = svd(A, SvdParts::Thin);
  const double s1 = s.singular_values[0];
  const double smin = s.singular_values[s.singular_values.size() - 1];
  out.condition = smin > 0.0 ? s1 / smin : std::numeric_limits<double>::infinity();
  CVector c = s.U.adjoint() * b;
  for (Index i = 0; i < c.size(); ++i)
  {
    if (s.singular_values[i] > cutoff * s1 && s1 > 0.0)
    {
      c[i] /= s.singular_values[i];
      ++out.rank;
    }
    else
    {
      c[i] = 0.0;
    }
  }
  out.x = s.V_h.adjoint() * c;
  return out;
}

CMatrix pinv(const CMatrix &A, double cutoff)
{
  const SvdResult s = svd(A, SvdParts::Thin);
  const double s1 = s.singular_values[0];
  RVector inv(s.singular_values.size());
  for (Index i = 0; i < inv.size(); ++i)
  {
    inv[i] = (s1 > 0.0 && s.singular_values[i] > cutoff * s1) ? 1.0 / s.singular_values[i] : 0.0;
  }
  return s.V_h.adjoint() * inv.asDiagonal() * s.U.adjoint();
}

CVector eig_general(const CMatrix &A)
{
  require(A.rows() == A.cols(), ErrorCode::InvalidArgument, "eigenvalues need a square matrix");
  if (A.rows() == 0)
  {
    return CVector(0);
  }
  require(A.allFinite(), ErrorCode::ConvergenceFailure, "matrix has non-finite entries");
  Eigen::ComplexEigenSolver<CMatrix> solver(A, false);
  require(solver.info() == Eigen::Success, ErrorCode::ConvergenceFailure,
          "eigenvalue iteration did not converge");
  return solver.eigenvalues();
}

CVector arrow_pencil_poles(const CVector &support, const CVector &weights)
{
  require(support.size() == weights.size() && support.size() >= 1, ErrorCode::InvalidArgument,
          "support and weight vectors must have equal positive length");
  const Index n = support.size();
  for (Index i = 0; i < n; ++i)
  {
    for (Index k = 0; k < i; ++k)
    {
      require(support[i] != support[k], ErrorCode::DuplicateNodes,
              "support nodes must be pairwise distinct");
    }
  }
  const double wmax = weights.cwiseAbs().maxCoeff();
  require(wmax > 0.0, ErrorCode::DegenerateWeights, "all weights vanish");
  for (Index i = 0; i < n; ++i)
  {
    require(std::abs(weights[i]) > 1e-13 * wmax, ErrorCode::DegenerateWeights,
            "a zero weight leaves a removable support node in the denominator");
  }
  // Leading coefficient of the numerator polynomial of the denominator; zero means a root
  // escaped to infinity.
  const Complex wsum = weights.sum();
  require(std::abs(wsum) > 1e-14 * weights.cwiseAbs().sum(), ErrorCode::DegenerateWeights,
          "weights sum to zero: fewer than m finite poles");
  if (n == 1)
  {
    return CVector(0);
  }

  // With D = diag(s) and v_j = 1/(lambda - s_j), D v = lambda v - 1, so any zero lambda of
  // w^T v is an eigenvalue of A = D - 1 (w^T D) / sum(w). The extra eigenvalue 0 has left
  // eigenvector w^T; a unitary whose first column is conj(w) moves it to a zero first row.
  CMatrix A = CMatrix(support.asDiagonal());
  const CVector wd = weights.cwiseProduct(support) / wsum;
  A.rowwise() -= wd.transpose();
  Eigen::HouseholderQR<CMatrix> hqr(CMatrix(weights.conjugate()));
  const CMatrix Q = hqr.householderQ();
  const CMatrix B = Q.adjoint() * A * Q;
  return eig_general(B.bottomRightCorner(n - 1, n - 1));
}

CMatrix build_q_matrix(const CVector &u, Index L)
{
  const Index K = u.size();
  require(L >= K, ErrorCode::InvalidArgument, "Q-matrix needs L >= K");
  for (Index i = 0; i < K; ++i)
  {
    for (Index k = 0; k < i; ++k)
    {
      require(u[i] != u[k], ErrorCode::DuplicateNodes, "Q-matrix nodes must be distinct");
    }
  }
  CMatrix Q = CMatrix::Zero(K, L);
  for (Index l = 0; l < K; ++l)
  {
    CVector c = CVector::Zero(K);
    c[0] = 1.0;
    Index degree = 0;
    for (Index n = 0; n < K; ++n)
    {
      if (n == l)
      {
        continue;
      }
      // c(z) <- c(z) (z - u_n)
      for (Index r = degree + 1; r >= 1; --r)
      {
        c[r] = c[r - 1] - u[n] * c[r];
      }
      c[0] = -u[n] * c[0];
      ++degree;
    }
    Q.row(l).head(K) = c.transpose();
  }
  return Q;
}

CMatrix vandermonde(const CVector &z, Index rows)
{
  CMatrix V(rows, z.size());
  for (Index j = 0; j < z.size(); ++j)
  {
    for (Index k = 0; k < rows; ++k)
    {
      V(k, j) = integer_power(z[j], k);
    }
  }
  return V;
}

double condition_number(const CMatrix &A)
{
  const RVector s = singular_values(A);
  const double smin = s[s.size() - 1];
  return smin > 0.0 ? s[0] / smin : std::numeric_limits<double>::infinity();
}

}  // namespace espira

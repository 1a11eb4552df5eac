#pragma once

#include "psc/matrix.hpp"

namespace psc {

/// Q* A Q.
CMatrix compress(const CMatrix& a, const Frame& q);

/// Generalized Schur complement (A/Q) = A - A Q (Q*AQ)^{-1} Q* A.
///
/// The pivot is handled with a pivoted LU solve, never an explicit inverse.
/// Throws SingularPivotError when sigma_min(Q*AQ) <= pivot_tol * ||A||.
/// A width-0 frame returns A unchanged.
CMatrix schur_complement(const CMatrix& a, const Frame& q, double pivot_tol = 1e-13);

/// H(e^{-i theta} M) = (e^{-i theta} M + e^{i theta} M*) / 2.
CMatrix hermitian_part(const CMatrix& m, double theta);

/// All singular values, largest first.
RVector singular_values(const CMatrix& m);

/// k-th largest singular value, 1-based. Throws DimensionError unless
/// 1 <= k <= min(rows, cols).
double singular_value(const CMatrix& m, Index k);

/// sigma_k with the convention sigma_k = 0 for k > min(rows, cols).
double singular_value_or_zero(const CMatrix& m, Index k);

/// sigma_{min(rows, cols)}.
double smallest_singular_value(const CMatrix& m);

/// Eigenvalues of a Hermitian matrix, largest first (lambda_1 >= ... >= lambda_n).
RVector hermitian_eigenvalues(const CMatrix& h);

/// Number of singular values above rel_tol * sigma_1.
Index numerical_rank(const CMatrix& m, double rel_tol = 1e-10);

/// z I - A.
CMatrix shift(const CMatrix& a, Complex z);

}  // namespace psc

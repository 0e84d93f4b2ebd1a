#pragma once

#include "specflow/cmatrix.hpp"
#include "specflow/poly.hpp"

namespace specflow {

/// Monic characteristic polynomial det(lambda I - A) via the
/// Faddeev-LeVerrier recursion, on a norm-scaled copy of A.
Poly char_poly(const CMatrix& A);

/// Monic minimal polynomial: the lowest-degree monic combination of matrix
/// powers that annihilates A. Rank deficiency among the vectorized powers
/// is detected by a relative singular-value drop.
Poly minimal_poly(const CMatrix& A);

/// (v* A^0 u, ..., v* A^kmax u) by iterated matrix-vector products.
std::vector<Complex> moments(const CMatrix& A, const CVector& u,
                             const CVector& v, int kmax);

/// v* (zeta I - A)^{-power} u via repeated LU solves.
Complex resolvent_moment(const CMatrix& A, Complex zeta, const CVector& u,
                         const CVector& v, int power);

/// Brute-force eigenvalue oracle: clustered roots of the characteristic
/// polynomial. Validation only; rejects n above the desk-scale cap.
std::vector<RootCluster> eig_oracle(const CMatrix& A);

}  // namespace specflow

#pragma once

// Dense complex linear algebra behind the tolerance policy: solve, rank,
// and eigenspace extraction for (nearly) Hermitian operators.

#include <Eigen/Dense>

#include "soconv/core.hpp"

namespace soconv {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Solve A x = b (square, well-conditioned callers only).
CVector solve(const CMatrix& a, const CVector& b);

// Numerical rank against tol.eq_abs scaled by the largest singular value.
int rank(const CMatrix& a, const Tolerance& tol = {});

struct Eigenspace {
  double value = 0.0;  // shared (clustered) eigenvalue
  CMatrix basis;       // orthonormal columns
};

// Spectral decomposition of a Hermitian operator. Eigenvalues closer than
// tol.eig_gap * max(1, spectral radius) are merged into one space.
std::vector<Eigenspace> eigenspaces(const CMatrix& a, const Tolerance& tol = {});

// Orthonormal column bases and misc helpers.
CMatrix orthonormalize(const CMatrix& a, double drop_tol = 1e-10);

}  // namespace soconv

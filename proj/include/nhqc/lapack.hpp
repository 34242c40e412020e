#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace nhqc::lapack {

// Set BLAS thread count when the backing library is OpenBLAS; no-op otherwise.
void set_blas_threads(int n);

struct GeneralEig {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd right_vectors;  // empty when vectors == false
};

// zgeev on a copy of A. Throws solver_error on non-convergence.
GeneralEig eig_general(Eigen::MatrixXcd A, bool vectors);

// zgetrf + zgetri. Throws solver_error on singular input.
Eigen::MatrixXcd invert(Eigen::MatrixXcd A);

// phase and log-magnitude of det(A), via LU in log domain
struct DetArg {
  double arg;      // in (-pi, pi] up to summation wrap; only used modulo 2*pi
  double log_abs;  // sum of log |u_ii|; -inf flags an exactly singular pivot
};

DetArg det_arg_dense(Eigen::MatrixXcd A);

// Banded LU (zgbtrf) det phase for a matrix given in LAPACK band storage.
// ab has ldab = 2*kl + ku + 1 rows and n columns; entry A(i,j) sits at
// ab(kl + ku + i - j, j) for 0-based i, j.
DetArg det_arg_banded(int n, int kl, int ku, Eigen::MatrixXcd& ab,
                      std::vector<int>& ipiv);

// Solve with a zgbtrf-factored band (zgbtrs), overwriting rhs.
void banded_solve(int n, int kl, int ku, const Eigen::MatrixXcd& ab,
                  const std::vector<int>& ipiv, Eigen::MatrixXcd& rhs);

}  // namespace nhqc::lapack

#include "nhqc/lapack.hpp"

#include <cmath>
#include <limits>

#include "nhqc/types.hpp"

using cd = std::complex<double>;

extern "C" {
void zgeev_(const char* jobvl, const char* jobvr, const int* n, cd* a, const int* lda,
            cd* w, cd* vl, const int* ldvl, cd* vr, const int* ldvr,
            cd* work, const int* lwork, double* rwork, int* info);
void zgetrf_(const int* m, const int* n, cd* a, const int* lda, int* ipiv, int* info);
void zgetri_(const int* n, cd* a, const int* lda, const int* ipiv,
             cd* work, const int* lwork, int* info);
void zgbtrf_(const int* m, const int* n, const int* kl, const int* ku,
             cd* ab, const int* ldab, int* ipiv, int* info);
void zgbtrs_(const char* trans, const int* n, const int* kl, const int* ku,
             const int* nrhs, const cd* ab, const int* ldab, const int* ipiv,
             cd* b, const int* ldb, int* info);
// present when linking OpenBLAS; resolved to null otherwise
void openblas_set_num_threads(int) __attribute__((weak));
}

namespace nhqc::lapack {

void set_blas_threads(int n) {
  if (openblas_set_num_threads) openblas_set_num_threads(n);
}

GeneralEig eig_general(Eigen::MatrixXcd A, bool vectors) {
  const int n = static_cast<int>(A.rows());
  GeneralEig out;
  out.values.resize(n);
  if (vectors) out.right_vectors.resize(n, n);

  const char jobvr = vectors ? 'V' : 'N';
  cd* vr = vectors ? out.right_vectors.data() : nullptr;
  int info = 0, lwork = -1;
  std::vector<double> rwork(2 * n);
  cd wkopt;
  zgeev_("N", &jobvr, &n, A.data(), &n, out.values.data(), nullptr, &n, vr, &n,
         &wkopt, &lwork, rwork.data(), &info);
  lwork = static_cast<int>(wkopt.real());
  std::vector<cd> work(lwork);
  zgeev_("N", &jobvr, &n, A.data(), &n, out.values.data(), nullptr, &n, vr, &n,
         work.data(), &lwork, rwork.data(), &info);
  if (info != 0)
    throw solver_error("zgeev failed to converge (info=" + std::to_string(info) + ")");
  return out;
}

Eigen::MatrixXcd invert(Eigen::MatrixXcd A) {
  const int n = static_cast<int>(A.rows());
  std::vector<int> ipiv(n);
  int info = 0;
  zgetrf_(&n, &n, A.data(), &n, ipiv.data(), &info);
  if (info != 0)
    throw solver_error("zgetrf: matrix is singular (info=" + std::to_string(info) + ")");
  int lwork = -1;
  cd wkopt;
  zgetri_(&n, A.data(), &n, ipiv.data(), &wkopt, &lwork, &info);
  lwork = static_cast<int>(wkopt.real());
  std::vector<cd> work(lwork);
  zgetri_(&n, A.data(), &n, ipiv.data(), work.data(), &lwork, &info);
  if (info != 0)
    throw solver_error("zgetri failed (info=" + std::to_string(info) + ")");
  return A;
}

DetArg det_arg_dense(Eigen::MatrixXcd A) {
  const int n = static_cast<int>(A.rows());
  std::vector<int> ipiv(n);
  int info = 0;
  zgetrf_(&n, &n, A.data(), &n, ipiv.data(), &info);
  DetArg d{0.0, 0.0};
  if (info > 0) {
    d.log_abs = -std::numeric_limits<double>::infinity();
    return d;
  }
  int swaps = 0;
  for (int i = 0; i < n; ++i) {
    if (ipiv[i] != i + 1) ++swaps;
    const cd u = A(i, i);
    d.arg += std::arg(u);
    d.log_abs += std::log(std::abs(u));
  }
  if (swaps % 2) d.arg += M_PI;
  return d;
}

DetArg det_arg_banded(int n, int kl, int ku, Eigen::MatrixXcd& ab,
                      std::vector<int>& ipiv) {
  const int ldab = static_cast<int>(ab.rows());
  int info = 0;
  ipiv.resize(n);
  zgbtrf_(&n, &n, &kl, &ku, ab.data(), &ldab, ipiv.data(), &info);
  DetArg d{0.0, 0.0};
  if (info > 0) {
    d.log_abs = -std::numeric_limits<double>::infinity();
    return d;
  }
  int swaps = 0;
  // diagonal of U lives in row kl + ku (0-based) of the band storage
  for (int j = 0; j < n; ++j) {
    if (ipiv[j] != j + 1) ++swaps;
    const cd u = ab(kl + ku, j);
    d.arg += std::arg(u);
    d.log_abs += std::log(std::abs(u));
  }
  if (swaps % 2) d.arg += M_PI;
  return d;
}

void banded_solve(int n, int kl, int ku, const Eigen::MatrixXcd& ab,
                  const std::vector<int>& ipiv, Eigen::MatrixXcd& rhs) {
  const int ldab = static_cast<int>(ab.rows());
  const int nrhs = static_cast<int>(rhs.cols());
  const int ldb = static_cast<int>(rhs.rows());
  int info = 0;
  zgbtrs_("N", &n, &kl, &ku, &nrhs, ab.data(), &ldab, ipiv.data(), rhs.data(), &ldb, &info);
  if (info != 0)
    throw solver_error("zgbtrs failed (info=" + std::to_string(info) + ")");
}

}  // namespace nhqc::lapack

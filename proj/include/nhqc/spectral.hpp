#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "nhqc/grid.hpp"
#include "nhqc/model.hpp"
#include "nhqc/types.hpp"

namespace nhqc {

// Full right-eigendecomposition of a (generally non-Hermitian) Hamiltonian.
// Eigenvalues are sorted lexicographically by (Re, Im); right_vectors columns
// carry unit 2-norm. inverse_vectors is filled on request (or on demand via
// ensure_inverse) and provides the biorthogonal expansion coefficients.
struct SpectralDecomposition {
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd right_vectors;
  Eigen::MatrixXcd inverse_vectors;
  double residual = 0.0;  // max_j ||H v_j - E_j v_j||_2

  Eigen::Index dim() const { return eigenvalues.size(); }
  bool has_inverse() const { return inverse_vectors.size() > 0; }
};

struct EigOptions {
  bool with_inverse = false;
  bool check_residual = true;
};

SpectralDecomposition eig(const HamiltonianMatrix& H, EigOptions opts = {});

// eigenvalues only (no vectors, no residual), same sort order
Eigen::VectorXcd eigvals(const HamiltonianMatrix& H);

void ensure_inverse(SpectralDecomposition& spec);

PTDiagnostics pt_diagnostics(const Eigen::VectorXcd& eigenvalues, double epsilon_im);
PTDiagnostics pt_diagnostics(const SpectralDecomposition& spec, double epsilon_im);

// Analytic U=0 two-boson spectrum of Eq.-of-motion momenta on an n_k x n_k
// grid over k, k' in [-pi, pi]; oracle for large-L noninteracting spectra.
std::vector<cplx> free_two_boson_spectrum(const ModelParams& params, int n_k);

struct PtBoundaryPoint {
  double U = 0.0;
  std::optional<double> mu_c;
};

// per-U first crossing of max|Im E| above epsilon_im, linearly interpolated
std::vector<PtBoundaryPoint> extract_pt_boundary(const PhaseGrid& grid, double epsilon_im);

}  // namespace nhqc

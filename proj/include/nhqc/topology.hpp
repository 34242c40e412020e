#pragma once

#include <utility>

#include "nhqc/localization.hpp"
#include "nhqc/model.hpp"
#include "nhqc/spectral.hpp"

namespace nhqc {

struct WindingResult {
  int value = 0;
  double raw_phase = 0.0;        // accumulated det-phase / 2pi before rounding
  int n_theta = 0;               // determinant evaluations actually used
  cplx base_energy{0.0, 0.0};    // base actually used (may carry an imaginary offset)
  double closure_residual = 0.0; // |accumulated phase - 2pi*value|, radians
};

enum class DetEngine {
  automatic,
  dense,   // full LU per theta sample; reference implementation
  banded,  // banded LU + low-rank boundary correction; OpenMP over theta
};

enum class Sector { single_particle, two_boson };

struct WindingOptions {
  int n_theta = 256;
  DetEngine engine = DetEngine::automatic;
  Sector sector = Sector::two_boson;
  double quantization_tol = 0.05;
  int max_grid_doublings = 2;
  bool parallel = true;  // parallelize det evaluations over theta
};

// Winding of det[H(theta/L) - E_B] as the twist theta runs over [0, 2pi].
// Steps with |delta arg| > pi/2 are bisected adaptively. Throws
// singular_base_error when the phase cannot be quantized (base on or
// numerically indistinguishable from an eigenvalue trajectory).
WindingResult winding_number(const ModelParams& params, cplx E_B, WindingOptions opts = {});

WindingResult winding_number(const ModelParams& params, cplx E_B, int n_theta,
                             DetEngine engine = DetEngine::automatic);

// E_B1 = Re E of the maximal-IPR eigenstate (first to localize),
// E_B2 = Re E of the minimal-IPR eigenstate (last to localize).
std::pair<cplx, cplx> select_base_energies(const SpectralDecomposition& spec,
                                           const LocalizationSummary& loc);

struct WindingPairResult {
  WindingResult w1, w2;
};

// Winding numbers at the two selected base energies. Real-axis bases that
// collide with real eigenvalue trajectories are retried with a small
// imaginary offset (spectra are conjugation symmetric, so +i*delta and
// -i*delta windings agree); the base actually used is reported.
WindingPairResult winding_pair(const ModelParams& params, const SpectralDecomposition& spec,
                               const LocalizationSummary& loc, WindingOptions opts = {});

}  // namespace nhqc

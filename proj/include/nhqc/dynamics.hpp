#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "nhqc/basis.hpp"
#include "nhqc/spectral.hpp"

namespace nhqc {

// |2_{ceil(L/2)}>: both bosons on the central site
Eigen::VectorXcd initial_doublon_state(const FockBasis& basis);

// log-spaced grid with `per_decade` points per decade over [t_min, t_max],
// endpoint included
std::vector<double> log_time_grid(double t_min, double t_max, int per_decade);

// site density rho_l = (1/2) <n_l> of a normalized two-boson state; sums to 1
Eigen::VectorXd site_density(const Eigen::VectorXcd& state, const FockBasis& basis);

struct EvolutionTrace {
  std::vector<double> times;
  Eigen::MatrixXd densities;            // one row per time, L columns
  std::vector<double> log_norm;         // ln ||Psi'(t)|| before renormalization
  std::optional<Eigen::MatrixXcd> states;  // one column per time when stored
};

// Postselected evolution: Psi'(t) = V e^{-i Lambda t} V^{-1} psi0, evaluated
// in log-magnitude form with a max-exponent shift, then renormalized.
// Requires spec.has_inverse().
EvolutionTrace propagate(const SpectralDecomposition& spec, const FockBasis& basis,
                         const Eigen::VectorXcd& psi0, const std::vector<double>& times,
                         bool store_states = false);

struct RankedState {
  int j;           // index into the sorted decomposition
  int l_peak;      // 1-based site of maximal density
  double im_E;
  double overlap;  // |<psi_j|Psi_0>| with unit-norm right vectors
};

struct JumpForecast {
  std::vector<RankedState> ranked_states;        // Im E strictly descending
  std::vector<double> predicted_jump_times;      // strictly increasing
};

// Top-k eigenstates by Im E and the dominance-crossover times
// t* = ln(|c_a|/|c_b|) / (Im E_b - Im E_a) along the upper envelope of
// ln|c_j| + t Im E_j.
JumpForecast jump_forecast(const SpectralDecomposition& spec, const FockBasis& basis,
                           const Eigen::VectorXcd& psi0, int k);

}  // namespace nhqc

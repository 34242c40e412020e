#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nhqc/basis.hpp"
#include "nhqc/model.hpp"
#include "nhqc/spectral.hpp"

namespace nhqc {

// Strong-coupling single-doublon chain: hopping 2J^2/U, onsite
// -2 mu e^{i 2 pi alpha l} + U + 4J^2/U, periodic ring of L sites.
struct EffectiveHamiltonian {
  Eigen::MatrixXcd mat;
  ModelParams params;

  Eigen::Index dim() const { return mat.rows(); }
};

EffectiveHamiltonian build_effective_hamiltonian(const ModelParams& params);

// total weight on doubly occupied sites, sum_l |<2_l|state>|^2
double doublon_weight(const Eigen::VectorXcd& state, const FockBasis& basis);

// eigenstate indices with doublon_weight > w_min, sorted by Re E descending
std::vector<int> doublon_band(const SpectralDecomposition& spec, const FockBasis& basis,
                              double w_min = 0.9);

// analytic strong-coupling PT boundary mu_c = J^2 / U
std::vector<std::pair<double, double>> pt_boundary_curve(const std::vector<double>& U_values,
                                                         double J = 1.0);

}  // namespace nhqc

#pragma once

#include <Eigen/Dense>

#include "nhqc/basis.hpp"
#include "nhqc/types.hpp"

namespace nhqc {

struct HamiltonianMatrix {
  Eigen::MatrixXcd mat;
  ModelParams params;

  Eigen::Index dim() const { return mat.rows(); }
};

// Dense two-boson Hamiltonian in the symmetrized basis.
HamiltonianMatrix build_hamiltonian(const ModelParams& params, const FockBasis& basis);

// L x L single-particle Hamiltonian H0 (U plays no role).
HamiltonianMatrix build_single_particle_hamiltonian(const ModelParams& params);

}  // namespace nhqc

#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "nhqc/basis.hpp"
#include "nhqc/dynamics.hpp"
#include "nhqc/spectral.hpp"

namespace nhqc {

// Half-chain reduced density matrix of subsystem A = sites 1..cut, assembled
// per particle-number sector N_A = 0, 1, 2.
struct ReducedBlocks {
  Eigen::MatrixXcd block0;  // 1 x 1
  Eigen::MatrixXcd block1;  // cut x cut
  Eigen::MatrixXcd block2;  // cut(cut+1)/2 square
  int cut = 0;

  double p(int n_a) const;  // sector probability = real trace of the block
};

// cut <= 0 selects the default floor(L/2)
ReducedBlocks reduced_blocks(const Eigen::VectorXcd& state, const FockBasis& basis,
                             int cut = 0);

enum class LogBase { natural, two };

struct EEDecomposition {
  double time = 0.0;
  std::array<double, 3> p_sector{};  // p_{N_A} for N_A = 0, 1, 2
  double s_num = 0.0, s_conf = 0.0, s_total = 0.0;
};

EEDecomposition ee_decomposition(const ReducedBlocks& blocks, LogBase base = LogBase::natural);

std::vector<EEDecomposition> ee_trace(const SpectralDecomposition& spec, const FockBasis& basis,
                                      const Eigen::VectorXcd& psi0,
                                      const std::vector<double>& times,
                                      LogBase base = LogBase::natural);

// arithmetic means of s_num, s_conf over trace samples inside [t_start, t_end]
std::pair<double, double> averaged_ee(const std::vector<EEDecomposition>& trace,
                                      double t_start, double t_end);

// site reflection l -> L+1-l; maps a cut-at-k entropy onto the complement cut
Eigen::VectorXcd reflect_state(const Eigen::VectorXcd& state, const FockBasis& basis);

}  // namespace nhqc

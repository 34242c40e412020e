#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nhqc/grid.hpp"
#include "nhqc/spectral.hpp"

namespace nhqc {

// inverse participation ratio sum_n |psi_n|^4 of a unit-norm state
double ipr(const Eigen::VectorXcd& state);

// normalized participation ratio 1 / (D * ipr)
double npr(const Eigen::VectorXcd& state);

struct LocalizationSummary {
  std::vector<double> ipr_per_state;
  double ipr_max = 0.0, ipr_min = 0.0, ipr_ave = 0.0, npr_ave = 0.0, zeta = 0.0;
  double tau_loc = 0.0;
  Phase phase = Phase::Extended;

  LocalizationStats stats() const {
    return {ipr_max, ipr_min, ipr_ave, npr_ave, zeta, tau_loc, phase};
  }
};

LocalizationSummary summarize(const SpectralDecomposition& spec, double tau_loc);

struct MobilityEdgeRow {
  double re_E, im_E, ipr;
};

// one row per eigenstate, sorted by Re E; stack over a mu scan to map
// mobility edges
std::vector<MobilityEdgeRow> mobility_edge_map(const SpectralDecomposition& spec,
                                               const LocalizationSummary& summary);

}  // namespace nhqc

#include "nhqc/doublon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nhqc {

EffectiveHamiltonian build_effective_hamiltonian(const ModelParams& params) {
  params.validate();
  if (params.U == 0.0)
    throw invalid_parameter("build_effective_hamiltonian: U must be nonzero");
  const int L = params.L;
  const double hop = 2.0 * params.J * params.J / params.U;

  EffectiveHamiltonian H;
  H.params = params;
  H.mat = Eigen::MatrixXcd::Zero(L, L);
  // diagonal constant U + 4J^2/U: the two diagonal second-order hopping sums
  // contribute 2J^2/U each, fixing the band bottom at exactly U in the clean
  // limit (exact pair dispersion sqrt(U^2 + 16 J^2 cos^2(K/2)))
  for (int l = 1; l <= L; ++l) {
    const double arg = 2.0 * M_PI * params.alpha * l;
    H.mat(l - 1, l - 1) = -2.0 * params.mu * cplx(std::cos(arg), std::sin(arg)) +
                          params.U + 2.0 * hop;
  }
  const int n_bonds = (params.boundary == Boundary::periodic) ? L : L - 1;
  for (int bond = 1; bond <= n_bonds; ++bond) {
    const int a = bond - 1;
    const int b = bond % L;
    H.mat(a, b) += hop;
    H.mat(b, a) += hop;
  }
  return H;
}

double doublon_weight(const Eigen::VectorXcd& state, const FockBasis& basis) {
  double w = 0.0;
  for (int l = 1; l <= basis.L; ++l) w += std::norm(state[basis.index_of(l, l)]);
  return w;
}

std::vector<int> doublon_band(const SpectralDecomposition& spec, const FockBasis& basis,
                              double w_min) {
  if (!(w_min > 0.0 && w_min < 1.0))
    throw invalid_parameter("doublon_band: w_min must lie in (0, 1)");
  std::vector<int> band;
  for (Eigen::Index j = 0; j < spec.dim(); ++j)
    if (doublon_weight(spec.right_vectors.col(j), basis) > w_min)
      band.push_back(static_cast<int>(j));
  std::sort(band.begin(), band.end(), [&](int a, int b) {
    return spec.eigenvalues[a].real() > spec.eigenvalues[b].real();
  });
  return band;
}

std::vector<std::pair<double, double>> pt_boundary_curve(const std::vector<double>& U_values,
                                                         double J) {
  std::vector<std::pair<double, double>> curve;
  curve.reserve(U_values.size());
  for (double U : U_values) {
    if (!(U > 0.0)) throw invalid_parameter("pt_boundary_curve: U values must be > 0");
    curve.emplace_back(U, J * J / U);
  }
  return curve;
}

}  // namespace nhqc

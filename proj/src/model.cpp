#include "nhqc/model.hpp"

#include <cmath>

namespace nhqc {

namespace {

// occupations of a two-boson pair state at site s
inline int occ(const std::pair<int, int>& p, int s) {
  return (p.first == s) + (p.second == s);
}

}  // namespace

HamiltonianMatrix build_hamiltonian(const ModelParams& params, const FockBasis& basis) {
  params.validate();
  if (basis.L != params.L)
    throw invalid_parameter("build_hamiltonian: basis.L does not match params.L");

  const int L = params.L;
  const auto D = static_cast<Eigen::Index>(basis.dim());
  HamiltonianMatrix H;
  H.params = params;
  H.mat = Eigen::MatrixXcd::Zero(D, D);

  // onsite potential and interaction
  for (Eigen::Index n = 0; n < D; ++n) {
    const auto& [l, lp] = basis.pairs[n];
    cplx diag = -params.mu * (params.site_phase(l) + params.site_phase(lp));
    if (l == lp) diag += params.U;
    H.mat(n, n) = diag;
  }

  // hopping: -J sum_l (b†_l b_{l+1} + h.c.), wrap L<->1 under PBC
  const int n_bonds = (params.boundary == Boundary::periodic) ? L : L - 1;
  for (Eigen::Index col = 0; col < D; ++col) {
    const auto& p = basis.pairs[col];
    for (int bond = 1; bond <= n_bonds; ++bond) {
      const int a = bond;
      const int b = bond % L + 1;
      // directed hops b†_a b_b and b†_b b_a
      for (const auto& [to, from] : {std::pair{a, b}, std::pair{b, a}}) {
        const int n_from = occ(p, from);
        if (n_from == 0) continue;
        const int n_to = occ(p, to);
        const double amp = std::sqrt(static_cast<double>(n_from)) *
                           std::sqrt(static_cast<double>(n_to + 1));
        // remaining boson after removing one from `from`
        const int spectator = (p.first == from) ? p.second : p.first;
        const Eigen::Index row = basis.index_of(std::min(spectator, to), std::max(spectator, to));
        H.mat(row, col) += -params.J * amp;
      }
    }
  }
  return H;
}

HamiltonianMatrix build_single_particle_hamiltonian(const ModelParams& params) {
  params.validate();
  const int L = params.L;
  HamiltonianMatrix H;
  H.params = params;
  H.mat = Eigen::MatrixXcd::Zero(L, L);
  for (int l = 1; l <= L; ++l) H.mat(l - 1, l - 1) = -params.mu * params.site_phase(l);
  const int n_bonds = (params.boundary == Boundary::periodic) ? L : L - 1;
  for (int bond = 1; bond <= n_bonds; ++bond) {
    const int a = bond - 1;
    const int b = bond % L;
    H.mat(a, b) += -params.J;
    H.mat(b, a) += -params.J;
  }
  return H;
}

}  // namespace nhqc

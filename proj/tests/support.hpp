#pragma once

// Test-only oracles, independent of the library code paths they check.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "nhqc/basis.hpp"
#include "nhqc/model.hpp"

namespace oracle {

using nhqc::cplx;

// Two-boson Hamiltonian assembled the long way round: single-particle H0 on
// the full L^2 tensor space, H = H0 x I + I x H0 + U * diag(double occupancy),
// projected onto the symmetrized basis. Checks build_hamiltonian entry by
// entry without sharing its bosonic-operator bookkeeping.
inline Eigen::MatrixXcd tensor_two_boson_hamiltonian(const nhqc::ModelParams& params,
                                                     const nhqc::FockBasis& basis) {
  const int L = params.L;
  const Eigen::MatrixXcd h0 = nhqc::build_single_particle_hamiltonian(params).mat;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(L, L);

  const auto idx2 = [L](int x, int y) { return (x - 1) * L + (y - 1); };  // 1-based sites
  Eigen::MatrixXcd H2 = Eigen::MatrixXcd::Zero(L * L, L * L);
  for (int x = 1; x <= L; ++x)
    for (int y = 1; y <= L; ++y)
      for (int xp = 1; xp <= L; ++xp)
        for (int yp = 1; yp <= L; ++yp) {
          cplx v = h0(x - 1, xp - 1) * id(y - 1, yp - 1) + id(x - 1, xp - 1) * h0(y - 1, yp - 1);
          H2(idx2(x, y), idx2(xp, yp)) += v;
        }
  for (int x = 1; x <= L; ++x) H2(idx2(x, x), idx2(x, x)) += params.U;

  // symmetrizer: column per basis pair
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(L * L, basis.dim());
  for (std::size_t n = 0; n < basis.dim(); ++n) {
    const auto& [l, lp] = basis.pairs[n];
    if (l == lp)
      S(idx2(l, l), static_cast<Eigen::Index>(n)) = 1.0;
    else {
      S(idx2(l, lp), static_cast<Eigen::Index>(n)) = 1.0 / std::sqrt(2.0);
      S(idx2(lp, l), static_cast<Eigen::Index>(n)) = 1.0 / std::sqrt(2.0);
    }
  }
  return S.adjoint() * H2 * S;
}

// symmetric Hausdorff distance between two complex value sets
inline double multiset_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  auto one_sided = [](const std::vector<cplx>& x, const std::vector<cplx>& y) {
    double worst = 0.0;
    for (const auto& xi : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& yj : y) best = std::min(best, std::abs(xi - yj));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

// pairwise sums {e_i + e_j : i <= j} of a single-particle spectrum
inline std::vector<cplx> pairwise_sums(const Eigen::VectorXcd& eps) {
  std::vector<cplx> out;
  for (Eigen::Index i = 0; i < eps.size(); ++i)
    for (Eigen::Index j = i; j < eps.size(); ++j) out.push_back(eps[i] + eps[j]);
  return out;
}

// deterministic random unit vector
inline Eigen::VectorXcd random_state(Eigen::Index dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = cplx(g(rng), g(rng));
  v.normalize();
  return v;
}

// monolithic oracle: reduced density matrix assembled in the full Fock basis
// of subsystem A (vacuum + single occupancies + pairs), no sector blocking
struct MonolithicRdm {
  Eigen::MatrixXcd omega;            // dA x dA
  std::vector<int> sector_of_state;  // N_A per A-Fock index
};

inline MonolithicRdm monolithic_rdm(const Eigen::VectorXcd& state, const nhqc::FockBasis& basis,
                                    int cut) {
  const int L = basis.L;
  const int nb = L - cut;
  // A-Fock index layout: [0] vacuum, [1..cut] single site a, then pairs (a<=a')
  const int da = 1 + cut + cut * (cut + 1) / 2;
  const int db = 1 + nb + nb * (nb + 1) / 2;
  auto a_single = [&](int a) { return 1 + (a - 1); };
  auto a_pair = [&](int a, int ap) {
    int n = 0;
    for (int x = 1; x <= cut; ++x)
      for (int y = x; y <= cut; ++y) {
        if (x == a && y == ap) return 1 + cut + n;
        ++n;
      }
    return -1;
  };
  auto b_single = [&](int b) { return 1 + (b - cut - 1); };
  auto b_pair = [&](int b, int bp) {
    int n = 0;
    for (int x = cut + 1; x <= L; ++x)
      for (int y = x; y <= L; ++y) {
        if (x == b && y == bp) return 1 + nb + n;
        ++n;
      }
    return -1;
  };

  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(da, db);
  std::vector<int> sector(da, -1);
  sector[0] = 0;
  for (int a = 1; a <= cut; ++a) sector[a_single(a)] = 1;
  for (int a = 1; a <= cut; ++a)
    for (int ap = a; ap <= cut; ++ap) sector[a_pair(a, ap)] = 2;

  for (std::size_t n = 0; n < basis.dim(); ++n) {
    const auto& [l, lp] = basis.pairs[n];
    int fa, fb;
    if (lp <= cut) {
      fa = a_pair(l, lp);
      fb = 0;
    } else if (l > cut) {
      fa = 0;
      fb = b_pair(l, lp);
    } else {
      fa = a_single(l);
      fb = b_single(lp);
    }
    M(fa, fb) = state[n];
  }
  return {M * M.adjoint(), sector};
}

inline double monolithic_entropy(const Eigen::MatrixXcd& omega) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (omega + omega.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double x = es.eigenvalues()[i];
    if (x > 1e-14) s -= x * std::log(x);
  }
  return s;
}

}  // namespace oracle

#include "nhqc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nhqc/lapack.hpp"

namespace nhqc {

namespace {

std::vector<Eigen::Index> sort_order(const Eigen::VectorXcd& w) {
  std::vector<Eigen::Index> idx(w.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (w[a].real() != w[b].real()) return w[a].real() < w[b].real();
    return w[a].imag() < w[b].imag();
  });
  return idx;
}

void check_finite(const HamiltonianMatrix& H) {
  if (!H.mat.allFinite()) throw invalid_parameter("eig: Hamiltonian has non-finite entries");
}

}  // namespace

SpectralDecomposition eig(const HamiltonianMatrix& H, EigOptions opts) {
  check_finite(H);
  auto raw = lapack::eig_general(H.mat, true);

  SpectralDecomposition spec;
  const auto order = sort_order(raw.values);
  const Eigen::Index D = raw.values.size();
  spec.eigenvalues.resize(D);
  for (Eigen::Index j = 0; j < D; ++j) spec.eigenvalues[j] = raw.values[order[j]];

  // permute the eigenvector columns in place, cycle by cycle; a second D x D
  // buffer would double the peak footprint at large L
  spec.right_vectors = std::move(raw.right_vectors);
  {
    std::vector<bool> visited(D, false);
    Eigen::VectorXcd held;
    for (Eigen::Index s = 0; s < D; ++s) {
      if (visited[s] || order[s] == s) continue;
      held = spec.right_vectors.col(s);
      Eigen::Index j = s;
      while (order[j] != s) {
        spec.right_vectors.col(j) = spec.right_vectors.col(order[j]);
        visited[j] = true;
        j = order[j];
      }
      spec.right_vectors.col(j) = held;
      visited[j] = true;
    }
    for (Eigen::Index j = 0; j < D; ++j) spec.right_vectors.col(j).normalize();
  }

  if (opts.check_residual) {
    const Eigen::MatrixXcd R =
        H.mat * spec.right_vectors - spec.right_vectors * spec.eigenvalues.asDiagonal();
    spec.residual = R.colwise().norm().maxCoeff();
    const double scale = H.mat.cwiseAbs().rowwise().sum().maxCoeff();
    if (spec.residual > 1e-8 * std::max(scale, 1.0))
      throw solver_error("eig: residual above spectral-scale tolerance", spec.residual);
  }

  if (opts.with_inverse) ensure_inverse(spec);
  return spec;
}

Eigen::VectorXcd eigvals(const HamiltonianMatrix& H) {
  check_finite(H);
  auto raw = lapack::eig_general(H.mat, false);
  const auto order = sort_order(raw.values);
  Eigen::VectorXcd w(raw.values.size());
  for (Eigen::Index j = 0; j < w.size(); ++j) w[j] = raw.values[order[j]];
  return w;
}

void ensure_inverse(SpectralDecomposition& spec) {
  if (spec.has_inverse()) return;
  spec.inverse_vectors = lapack::invert(spec.right_vectors);
}

PTDiagnostics pt_diagnostics(const Eigen::VectorXcd& eigenvalues, double epsilon_im) {
  if (!(epsilon_im > 0.0)) throw invalid_parameter("pt_diagnostics: epsilon_im must be > 0");
  PTDiagnostics d;
  d.epsilon_im = epsilon_im;
  for (Eigen::Index j = 0; j < eigenvalues.size(); ++j) {
    const double im = std::abs(eigenvalues[j].imag());
    d.max_abs_imag = std::max(d.max_abs_imag, im);
    if (im > epsilon_im) ++d.d_im;
  }
  d.rho_im = eigenvalues.size() ? static_cast<double>(d.d_im) / eigenvalues.size() : 0.0;
  return d;
}

PTDiagnostics pt_diagnostics(const SpectralDecomposition& spec, double epsilon_im) {
  return pt_diagnostics(spec.eigenvalues, epsilon_im);
}

std::vector<cplx> free_two_boson_spectrum(const ModelParams& params, int n_k) {
  if (n_k < 2) throw invalid_parameter("free_two_boson_spectrum: n_k must be >= 2");
  const double J = params.J, mu = params.mu;
  double h = 0.0;
  if (std::abs(mu) > std::abs(J)) {
    if (!(mu / J > 0.0))
      throw domain_error("free_two_boson_spectrum: |mu|>|J| branch requires mu/J > 0");
    h = std::log(mu / J);
  }
  std::vector<double> ks(n_k);
  for (int i = 0; i < n_k; ++i) ks[i] = -M_PI + 2.0 * M_PI * i / (n_k - 1);

  std::vector<cplx> E;
  E.reserve(static_cast<std::size_t>(n_k) * n_k);
  for (double k : ks)
    for (double kp : ks) {
      const cplx z1 = std::cos(cplx(k, -h));
      const cplx z2 = std::cos(cplx(kp, -h));
      E.push_back(2.0 * J * (z1 + z2));
    }
  return E;
}

std::vector<PtBoundaryPoint> extract_pt_boundary(const PhaseGrid& grid, double epsilon_im) {
  if (!(epsilon_im > 0.0)) throw invalid_parameter("extract_pt_boundary: epsilon_im must be > 0");
  std::vector<PtBoundaryPoint> out;
  out.reserve(grid.u_values.size());
  for (std::size_t iu = 0; iu < grid.u_values.size(); ++iu) {
    PtBoundaryPoint p;
    p.U = grid.u_values[iu];
    double prev_mu = 0.0, prev_v = 0.0;
    bool have_prev = false;
    for (std::size_t imu = 0; imu < grid.mu_values.size(); ++imu) {
      const auto& c = grid.cell(imu, iu);
      if (!c.ok || !c.pt) continue;
      const double v = c.pt->max_abs_imag;
      if (v > epsilon_im) {
        if (have_prev && v != prev_v)
          p.mu_c = prev_mu + (epsilon_im - prev_v) * (c.mu - prev_mu) / (v - prev_v);
        else
          p.mu_c = c.mu;
        break;
      }
      prev_mu = c.mu;
      prev_v = v;
      have_prev = true;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace nhqc

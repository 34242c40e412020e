#include "nhqc/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nhqc/lapack.hpp"

namespace nhqc {

namespace {

struct HopEntry {
  int i, j;
  double val;
};

// theta-independent decomposition H(theta) = Hop + diag(d(theta));
// hop entries split into banded part and out-of-band boundary corrections
struct DetEvaluator {
  ModelParams params;
  Sector sector;
  FockBasis basis;  // unused for single_particle
  cplx e_base;
  int dim = 0;
  int band = 0;  // kl = ku
  std::vector<HopEntry> in_band;
  std::vector<HopEntry> out_band;

  DetEvaluator(const ModelParams& p, Sector s, cplx base) : params(p), sector(s), e_base(base) {
    ModelParams hop_only = params;
    hop_only.mu = 0.0;
    hop_only.U = 0.0;
    Eigen::MatrixXcd hop;
    if (sector == Sector::two_boson) {
      basis = build_basis(params.L);
      hop = build_hamiltonian(hop_only, basis).mat;
      band = params.L - 1;
    } else {
      hop = build_single_particle_hamiltonian(hop_only).mat;
      band = 1;
    }
    dim = static_cast<int>(hop.rows());
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < dim; ++i) {
        const double v = hop(i, j).real();
        if (i == j || v == 0.0) continue;
        if (std::abs(i - j) <= band)
          in_band.push_back({i, j, v});
        else
          out_band.push_back({i, j, v});
      }
  }

  Eigen::VectorXcd diagonal(double theta) const {
    ModelParams p = params;
    p.theta = theta;
    Eigen::VectorXcd d(dim);
    std::vector<cplx> phase(params.L + 1);
    for (int l = 1; l <= params.L; ++l) phase[l] = p.site_phase(l);
    if (sector == Sector::two_boson) {
      for (int n = 0; n < dim; ++n) {
        const auto& [l, lp] = basis.pairs[n];
        d[n] = -params.mu * (phase[l] + phase[lp]) - e_base;
        if (l == lp) d[n] += params.U;
      }
    } else {
      for (int l = 1; l <= params.L; ++l) d[l - 1] = -params.mu * phase[l] - e_base;
    }
    return d;
  }

  lapack::DetArg eval_dense(double theta) const {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& e : in_band) A(e.i, e.j) = e.val;
    for (const auto& e : out_band) A(e.i, e.j) = e.val;
    A.diagonal() = diagonal(theta);
    return lapack::det_arg_dense(std::move(A));
  }

  lapack::DetArg eval_banded(double theta) const {
    const int kl = band, ku = band, ldab = 2 * kl + ku + 1;
    Eigen::MatrixXcd ab = Eigen::MatrixXcd::Zero(ldab, dim);
    for (const auto& e : in_band) ab(kl + ku + e.i - e.j, e.j) = e.val;
    const Eigen::VectorXcd d = diagonal(theta);
    for (int n = 0; n < dim; ++n) ab(kl + ku, n) = d[n];

    std::vector<int> ipiv;
    lapack::DetArg res = lapack::det_arg_banded(dim, kl, ku, ab, ipiv);
    if (!std::isfinite(res.log_abs)) return eval_dense(theta);  // singular banded part

    if (!out_band.empty()) {
      // det(A + UC) = det(A) det(I + C A^{-1} U) with U, C built from the
      // out-of-band entries val * e_i e_j^T
      const int r = static_cast<int>(out_band.size());
      Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(dim, r);
      for (int k = 0; k < r; ++k) rhs(out_band[k].i, k) = out_band[k].val;
      lapack::banded_solve(dim, kl, ku, ab, ipiv, rhs);
      Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(r, r);
      for (int k1 = 0; k1 < r; ++k1)
        for (int k2 = 0; k2 < r; ++k2) M(k1, k2) += rhs(out_band[k1].j, k2);
      const lapack::DetArg corr = lapack::det_arg_dense(std::move(M));
      if (!std::isfinite(corr.log_abs)) return eval_dense(theta);
      res.arg += corr.arg;
      res.log_abs += corr.log_abs;
    }
    return res;
  }

  double arg_at(double theta, DetEngine engine) const {
    const lapack::DetArg d =
        (engine == DetEngine::dense) ? eval_dense(theta) : eval_banded(theta);
    if (!std::isfinite(d.log_abs) || !std::isfinite(d.arg))
      throw singular_base_error("winding_number: determinant vanished at a sampled twist");
    return d.arg;
  }
};

struct Sample {
  double theta;
  double arg;
};

double wrapped(double d) { return std::remainder(d, 2.0 * M_PI); }

}  // namespace

WindingResult winding_number(const ModelParams& params, cplx E_B, WindingOptions opts) {
  params.validate();
  if (opts.n_theta < 64) throw invalid_parameter("winding_number: n_theta must be >= 64");

  DetEngine engine = opts.engine;
  if (engine == DetEngine::automatic) engine = DetEngine::banded;

  const DetEvaluator ev(params, opts.sector, E_B);

  int n = opts.n_theta;
  for (int attempt = 0; attempt <= opts.max_grid_doublings; ++attempt, n *= 2) {
    std::vector<Sample> samples(n + 1);
    for (int k = 0; k <= n; ++k) samples[k].theta = 2.0 * M_PI * k / n;

    auto evaluate = [&](std::vector<Sample>& batch) {
      bool singular = false;
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
      for (std::size_t k = 0; k < batch.size(); ++k) {
        try {
          batch[k].arg = ev.arg_at(batch[k].theta, engine);
        } catch (const std::exception&) {
#pragma omp atomic write
          singular = true;
        }
      }
      if (singular)
        throw singular_base_error("winding_number: determinant vanished at a sampled twist");
    };
    evaluate(samples);

    const double theta_min = 2.0 * M_PI / n / 4096.0;
    const std::size_t sample_budget = 8 * static_cast<std::size_t>(n);
    bool resolved = true;
    for (int round = 0; round < 16; ++round) {
      std::vector<Sample> mids;
      resolved = true;
      for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
        if (std::abs(wrapped(samples[k + 1].arg - samples[k].arg)) <= M_PI / 2.0) continue;
        if (samples[k + 1].theta - samples[k].theta <= theta_min) {
          resolved = false;
          continue;
        }
        mids.push_back({0.5 * (samples[k].theta + samples[k + 1].theta), 0.0});
        resolved = false;
      }
      if (mids.empty() || samples.size() + mids.size() > sample_budget) break;
      evaluate(mids);
      samples.insert(samples.end(), mids.begin(), mids.end());
      std::sort(samples.begin(), samples.end(),
                [](const Sample& a, const Sample& b) { return a.theta < b.theta; });
    }

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < samples.size(); ++k)
      total += wrapped(samples[k + 1].arg - samples[k].arg);

    WindingResult res;
    res.raw_phase = total / (2.0 * M_PI);
    res.value = static_cast<int>(std::lround(res.raw_phase));
    res.n_theta = static_cast<int>(samples.size());
    res.base_energy = E_B;
    res.closure_residual = std::abs(total - 2.0 * M_PI * res.value);
    if (resolved && std::abs(res.raw_phase - res.value) < opts.quantization_tol) return res;
  }
  throw singular_base_error(
      "winding_number: phase failed to quantize; base energy lies on or too close to an "
      "eigenvalue trajectory");
}

WindingResult winding_number(const ModelParams& params, cplx E_B, int n_theta, DetEngine engine) {
  WindingOptions opts;
  opts.n_theta = n_theta;
  opts.engine = engine;
  return winding_number(params, E_B, opts);
}

std::pair<cplx, cplx> select_base_energies(const SpectralDecomposition& spec,
                                           const LocalizationSummary& loc) {
  const auto& v = loc.ipr_per_state;
  const auto jmax = std::max_element(v.begin(), v.end()) - v.begin();
  const auto jmin = std::min_element(v.begin(), v.end()) - v.begin();
  return {cplx(spec.eigenvalues[jmax].real(), 0.0), cplx(spec.eigenvalues[jmin].real(), 0.0)};
}

namespace {

WindingResult winding_with_offset_fallback(const ModelParams& params, cplx E_B,
                                           const WindingOptions& opts,
                                           const Eigen::VectorXcd& eigenvalues) {
  static constexpr double offsets[] = {0.0, 1e-3, 1e-2, 5e-2};
  // a base within 1e-3 of the spectrum at theta=0 is all but guaranteed to
  // collide with a trajectory; likewise, offsets buried inside the near-real
  // eigenvalue cloud around Re E_B cannot quantize
  const double min_eig_dist = (eigenvalues.array() - E_B).abs().minCoeff();
  double cloud = 0.0;
  for (Eigen::Index j = 0; j < eigenvalues.size(); ++j)
    if (std::abs(eigenvalues[j].real() - E_B.real()) < 0.2)
      cloud = std::max(cloud, std::abs(eigenvalues[j].imag()));
  for (std::size_t k = 0; k < std::size(offsets); ++k) {
    const bool last = (k + 1 == std::size(offsets));
    if (offsets[k] == 0.0 && min_eig_dist < 1e-3) continue;
    if (offsets[k] > 0.0 && cloud < 0.05 && offsets[k] <= 1.3 * cloud && !last) continue;
    // fail fast along the ladder; only the final attempt doubles the grid
    WindingOptions attempt = opts;
    if (!last) attempt.max_grid_doublings = 0;
    try {
      return winding_number(params, E_B + cplx(0.0, offsets[k]), attempt);
    } catch (const singular_base_error&) {
      if (last) throw;
    }
  }
  throw singular_base_error("winding_with_offset_fallback: unreachable");
}

}  // namespace

WindingPairResult winding_pair(const ModelParams& params, const SpectralDecomposition& spec,
                               const LocalizationSummary& loc, WindingOptions opts) {
  opts.sector = Sector::two_boson;
  const auto [eb1, eb2] = select_base_energies(spec, loc);
  WindingPairResult out;
  out.w1 = winding_with_offset_fallback(params, eb1, opts, spec.eigenvalues);
  out.w2 = winding_with_offset_fallback(params, eb2, opts, spec.eigenvalues);
  return out;
}

}  // namespace nhqc

#include "nhqc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nhqc {

Eigen::VectorXcd initial_doublon_state(const FockBasis& basis) {
  const int l0 = (basis.L + 1) / 2;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.dim());
  v[basis.index_of(l0, l0)] = 1.0;
  return v;
}

std::vector<double> log_time_grid(double t_min, double t_max, int per_decade) {
  if (!(t_min > 0.0) || !(t_max > t_min) || per_decade < 1)
    throw invalid_parameter("log_time_grid: need 0 < t_min < t_max and per_decade >= 1");
  const double lo = std::log10(t_min), hi = std::log10(t_max);
  const int n = static_cast<int>(std::ceil((hi - lo) * per_decade));
  std::vector<double> t(n + 1);
  for (int i = 0; i <= n; ++i) t[i] = std::pow(10.0, lo + (hi - lo) * i / n);
  t.back() = t_max;
  return t;
}

Eigen::VectorXd site_density(const Eigen::VectorXcd& state, const FockBasis& basis) {
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(basis.L);
  for (std::size_t n = 0; n < basis.dim(); ++n) {
    const double w = 0.5 * std::norm(state[n]);
    rho[basis.pairs[n].first - 1] += w;
    rho[basis.pairs[n].second - 1] += w;
  }
  return rho;
}

EvolutionTrace propagate(const SpectralDecomposition& spec, const FockBasis& basis,
                         const Eigen::VectorXcd& psi0, const std::vector<double>& times,
                         bool store_states) {
  if (!spec.has_inverse())
    throw invalid_parameter("propagate: decomposition lacks inverse vectors (use ensure_inverse)");
  if (psi0.size() != spec.dim())
    throw invalid_parameter("propagate: psi0 dimension mismatch");
  if (!std::is_sorted(times.begin(), times.end()))
    throw invalid_parameter("propagate: times must be sorted ascending");
  if (!times.empty() && times.front() < 0.0)
    throw invalid_parameter("propagate: times must be non-negative");

  const Eigen::Index D = spec.dim();
  const Eigen::VectorXcd c = spec.inverse_vectors * psi0;
  if (c.cwiseAbs().maxCoeff() == 0.0)
    throw degenerate_initial_state_error("propagate: initial state has no eigenmode content");

  // ln c_j split into magnitude and phase; zero modes stay silent
  Eigen::VectorXd log_c(D), arg_c(D);
  for (Eigen::Index j = 0; j < D; ++j) {
    const double a = std::abs(c[j]);
    log_c[j] = (a > 0.0) ? std::log(a) : -std::numeric_limits<double>::infinity();
    arg_c[j] = std::arg(c[j]);
  }

  EvolutionTrace tr;
  tr.times = times;
  tr.densities.resize(static_cast<Eigen::Index>(times.size()), basis.L);
  tr.log_norm.assign(times.size(), 0.0);
  if (store_states) tr.states.emplace(D, static_cast<Eigen::Index>(times.size()));

#pragma omp parallel for schedule(dynamic)
  for (std::size_t it = 0; it < times.size(); ++it) {
    const double t = times[it];
    double shift = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < D; ++j)
      shift = std::max(shift, log_c[j] + t * spec.eigenvalues[j].imag());
    Eigen::VectorXcd amps(D);
    for (Eigen::Index j = 0; j < D; ++j) {
      const double mag = log_c[j] + t * spec.eigenvalues[j].imag() - shift;
      const double ph = arg_c[j] - t * spec.eigenvalues[j].real();
      amps[j] = (mag > -745.0) ? std::polar(std::exp(mag), ph) : cplx(0.0, 0.0);
    }
    Eigen::VectorXcd psi = spec.right_vectors * amps;
    const double nrm = psi.norm();
    psi /= nrm;
    tr.log_norm[it] = shift + std::log(nrm);
    tr.densities.row(static_cast<Eigen::Index>(it)) = site_density(psi, basis).transpose();
    if (store_states) tr.states->col(static_cast<Eigen::Index>(it)) = psi;
  }
  return tr;
}

JumpForecast jump_forecast(const SpectralDecomposition& spec, const FockBasis& basis,
                           const Eigen::VectorXcd& psi0, int k) {
  if (k < 2) throw invalid_parameter("jump_forecast: k must be >= 2");
  const Eigen::Index D = spec.dim();
  k = std::min<Eigen::Index>(k, D);

  std::vector<int> order(D);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return spec.eigenvalues[a].imag() > spec.eigenvalues[b].imag();
  });

  JumpForecast f;
  f.ranked_states.reserve(k);
  for (int r = 0; r < k; ++r) {
    const int j = order[r];
    RankedState s;
    s.j = j;
    s.im_E = spec.eigenvalues[j].imag();
    s.overlap = std::abs(spec.right_vectors.col(j).dot(psi0));
    Eigen::Index peak;
    site_density(spec.right_vectors.col(j), basis).maxCoeff(&peak);
    s.l_peak = static_cast<int>(peak) + 1;
    f.ranked_states.push_back(s);
    if (r > 0 && f.ranked_states[r - 1].im_E - s.im_E < 1e-12)
      throw degenerate_rate_error("jump_forecast: adjacent states share Im E within 1e-12");
  }

  // dominance walk along the upper envelope of ln|c_j| + t Im E_j
  const auto log_amp = [&](const RankedState& s) {
    return (s.overlap > 0.0) ? std::log(s.overlap) : -std::numeric_limits<double>::infinity();
  };
  int cur = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < k; ++r)
    if (log_amp(f.ranked_states[r]) > best) {
      best = log_amp(f.ranked_states[r]);
      cur = r;
    }
  double t_now = 0.0;
  while (true) {
    // earliest future takeover by a faster-growing mode
    int next = -1;
    double t_next = std::numeric_limits<double>::infinity();
    for (int r = 0; r < cur; ++r) {  // ranks above cur have larger Im E
      const double dim_e = f.ranked_states[r].im_E - f.ranked_states[cur].im_E;
      const double t_cross =
          (log_amp(f.ranked_states[cur]) - log_amp(f.ranked_states[r])) / dim_e;
      if (t_cross > t_now && t_cross < t_next) {
        t_next = t_cross;
        next = r;
      }
    }
    if (next < 0) break;
    f.predicted_jump_times.push_back(t_next);
    t_now = t_next;
    cur = next;
  }
  return f;
}

}  // namespace nhqc

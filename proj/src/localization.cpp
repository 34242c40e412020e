#include "nhqc/localization.hpp"

#include <algorithm>
#include <cmath>

namespace nhqc {

namespace {

void check_normalized(const Eigen::VectorXcd& state) {
  if (std::abs(state.norm() - 1.0) > 1e-10)
    throw invalid_parameter("ipr/npr: state is not normalized");
}

}  // namespace

double ipr(const Eigen::VectorXcd& state) {
  check_normalized(state);
  double s = 0.0;
  for (Eigen::Index n = 0; n < state.size(); ++n) {
    const double a2 = std::norm(state[n]);
    s += a2 * a2;
  }
  return s;
}

double npr(const Eigen::VectorXcd& state) {
  return 1.0 / (static_cast<double>(state.size()) * ipr(state));
}

LocalizationSummary summarize(const SpectralDecomposition& spec, double tau_loc) {
  const auto D = spec.dim();
  if (D == 0) throw invalid_parameter("summarize: empty decomposition");
  if (!(tau_loc > 1.0 / static_cast<double>(D) && tau_loc < 1.0))
    throw invalid_parameter("summarize: tau_loc must lie in (1/D, 1)");

  LocalizationSummary s;
  s.tau_loc = tau_loc;
  s.ipr_per_state.resize(D);
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < D; ++j) s.ipr_per_state[j] = ipr(spec.right_vectors.col(j));

  s.ipr_max = *std::max_element(s.ipr_per_state.begin(), s.ipr_per_state.end());
  s.ipr_min = *std::min_element(s.ipr_per_state.begin(), s.ipr_per_state.end());
  double sum_ipr = 0.0, sum_npr = 0.0;
  for (double v : s.ipr_per_state) {
    sum_ipr += v;
    sum_npr += 1.0 / (static_cast<double>(D) * v);
  }
  s.ipr_ave = sum_ipr / static_cast<double>(D);
  s.npr_ave = sum_npr / static_cast<double>(D);
  s.zeta = std::log10(s.ipr_ave * s.npr_ave);

  if (s.ipr_max < tau_loc)
    s.phase = Phase::Extended;
  else if (s.ipr_min > tau_loc)
    s.phase = Phase::Localized;
  else
    s.phase = Phase::Critical;
  return s;
}

std::vector<MobilityEdgeRow> mobility_edge_map(const SpectralDecomposition& spec,
                                               const LocalizationSummary& summary) {
  std::vector<MobilityEdgeRow> rows(spec.dim());
  for (Eigen::Index j = 0; j < spec.dim(); ++j)
    rows[j] = {spec.eigenvalues[j].real(), spec.eigenvalues[j].imag(),
               summary.ipr_per_state[j]};
  std::sort(rows.begin(), rows.end(),
            [](const MobilityEdgeRow& a, const MobilityEdgeRow& b) { return a.re_E < b.re_E; });
  return rows;
}

}  // namespace nhqc

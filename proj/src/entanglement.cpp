#include "nhqc/entanglement.hpp"

#include <cmath>

namespace nhqc {

namespace {

constexpr double kSectorFloor = 1e-14;  // sectors below this carry no entropy

double xlogx(double x) { return (x > 0.0) ? x * std::log(x) : 0.0; }

std::vector<double> block_eigenvalues(const Eigen::MatrixXcd& block) {
  if (block.rows() == 1) return {block(0, 0).real()};
  const Eigen::MatrixXcd herm = 0.5 * (block + block.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

double ReducedBlocks::p(int n_a) const {
  const Eigen::MatrixXcd* b = (n_a == 0) ? &block0 : (n_a == 1) ? &block1 : &block2;
  return b->trace().real();
}

ReducedBlocks reduced_blocks(const Eigen::VectorXcd& state, const FockBasis& basis, int cut) {
  if (std::abs(state.norm() - 1.0) > 1e-10)
    throw invalid_parameter("reduced_blocks: state is not normalized");
  const int L = basis.L;
  if (cut <= 0) cut = L / 2;
  if (cut < 1 || cut >= L) throw invalid_parameter("reduced_blocks: cut out of range");

  ReducedBlocks rb;
  rb.cut = cut;

  // N_A = 2: both bosons inside A; pure outer product of the restricted
  // amplitudes (the B factor is the vacuum)
  const int da2 = cut * (cut + 1) / 2;
  Eigen::VectorXcd v2(da2);
  {
    int n = 0;
    for (int a = 1; a <= cut; ++a)
      for (int ap = a; ap <= cut; ++ap) v2[n++] = state[basis.index_of(a, ap)];
  }
  rb.block2 = v2 * v2.adjoint();

  // N_A = 1: one boson each side; Gram matrix of g(a, b) over the B sites
  Eigen::MatrixXcd g(cut, L - cut);
  for (int a = 1; a <= cut; ++a)
    for (int b = cut + 1; b <= L; ++b) g(a - 1, b - cut - 1) = state[basis.index_of(a, b)];
  rb.block1 = g * g.adjoint();

  // N_A = 0: both bosons in B
  double p0 = 0.0;
  for (int b = cut + 1; b <= L; ++b)
    for (int bp = b; bp <= L; ++bp) p0 += std::norm(state[basis.index_of(b, bp)]);
  rb.block0 = Eigen::MatrixXcd::Constant(1, 1, p0);

  return rb;
}

EEDecomposition ee_decomposition(const ReducedBlocks& blocks, LogBase base) {
  EEDecomposition d;
  const Eigen::MatrixXcd* bptr[3] = {&blocks.block0, &blocks.block1, &blocks.block2};
  double s_num = 0.0, s_conf = 0.0;
  for (int n_a = 0; n_a < 3; ++n_a) {
    auto lam = block_eigenvalues(*bptr[n_a]);
    double p = 0.0;
    for (double& x : lam) {
      if (x < -1e-10)
        throw numerical_consistency_error(
            "ee_decomposition: reduced-density block has eigenvalue below -1e-10");
      if (x < 0.0) x = 0.0;
      p += x;
    }
    d.p_sector[n_a] = p;
    if (p < kSectorFloor) continue;
    s_num -= xlogx(p);
    double block_entropy = 0.0;
    for (double x : lam) block_entropy -= xlogx(x / p);
    s_conf += p * block_entropy;
  }
  if (base == LogBase::two) {
    s_num /= std::log(2.0);
    s_conf /= std::log(2.0);
  }
  d.s_num = s_num;
  d.s_conf = s_conf;
  d.s_total = s_num + s_conf;
  return d;
}

std::vector<EEDecomposition> ee_trace(const SpectralDecomposition& spec, const FockBasis& basis,
                                      const Eigen::VectorXcd& psi0,
                                      const std::vector<double>& times, LogBase base) {
  const EvolutionTrace tr = propagate(spec, basis, psi0, times, /*store_states=*/true);
  std::vector<EEDecomposition> out(times.size());
  bool failed = false;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t it = 0; it < times.size(); ++it) {
    try {
      const auto rb = reduced_blocks(tr.states->col(static_cast<Eigen::Index>(it)), basis);
      out[it] = ee_decomposition(rb, base);
      out[it].time = times[it];
    } catch (const std::exception&) {
#pragma omp atomic write
      failed = true;
    }
  }
  if (failed)
    throw numerical_consistency_error("ee_trace: entropy evaluation failed at a sample");
  return out;
}

std::pair<double, double> averaged_ee(const std::vector<EEDecomposition>& trace,
                                      double t_start, double t_end) {
  double sn = 0.0, sc = 0.0;
  int count = 0;
  for (const auto& d : trace)
    if (d.time >= t_start && d.time <= t_end) {
      sn += d.s_num;
      sc += d.s_conf;
      ++count;
    }
  if (count == 0) throw invalid_parameter("averaged_ee: window contains no samples");
  return {sn / count, sc / count};
}

Eigen::VectorXcd reflect_state(const Eigen::VectorXcd& state, const FockBasis& basis) {
  const int L = basis.L;
  Eigen::VectorXcd out(state.size());
  for (std::size_t n = 0; n < basis.dim(); ++n) {
    const auto& [l, lp] = basis.pairs[n];
    out[basis.index_of(L + 1 - lp, L + 1 - l)] = state[n];
  }
  return out;
}

}  // namespace nhqc

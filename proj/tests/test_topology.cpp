#include <doctest.h>

#include <complex>
#include <vector>

#include "nhqc/topology.hpp"
#include "support.hpp"

using namespace nhqc;

namespace {

// winding oracle: follow every eigenvalue trajectory over the twist loop by
// nearest-neighbour matching and accumulate arg changes around the base;
// independent of the determinant-phase route
double trajectory_winding(ModelParams p, cplx eb, int n_theta, Sector sector) {
  const FockBasis basis = (sector == Sector::two_boson) ? build_basis(p.L) : FockBasis{};
  auto eigs_at = [&](double th) {
    p.theta = th;
    return (sector == Sector::two_boson) ? eigvals(build_hamiltonian(p, basis))
                                         : eigvals(build_single_particle_hamiltonian(p));
  };
  Eigen::VectorXcd prev = eigs_at(0.0);
  double total = 0.0;
  for (int k = 1; k <= n_theta; ++k) {
    const Eigen::VectorXcd cur_raw = eigs_at(2.0 * M_PI * k / n_theta);
    std::vector<bool> used(cur_raw.size(), false);
    Eigen::VectorXcd cur(prev.size());
    for (Eigen::Index i = 0; i < prev.size(); ++i) {
      double best = 1e300;
      Eigen::Index bj = -1;
      for (Eigen::Index j = 0; j < cur_raw.size(); ++j) {
        if (used[j]) continue;
        const double d = std::abs(cur_raw[j] - prev[i]);
        if (d < best) {
          best = d;
          bj = j;
        }
      }
      used[bj] = true;
      cur[i] = cur_raw[bj];
      total += std::arg((cur[i] - eb) / (prev[i] - eb));
    }
    prev = cur;
  }
  return total / (2.0 * M_PI);
}

}  // namespace

TEST_CASE("single-particle winding jumps at the PT transition") {
  ModelParams p;
  p.L = 21;
  p.alpha = rational_alpha(p.L);
  WindingOptions opts;
  opts.sector = Sector::single_particle;
  opts.n_theta = 64;

  p.mu = 1.5;
  const auto w_loc = winding_number(p, cplx(0, 0), opts);
  CHECK(w_loc.value == 1);
  CHECK(std::abs(w_loc.raw_phase - w_loc.value) < 0.05);

  p.mu = 0.5;
  const auto w_ext = winding_number(p, cplx(0, 0.3), opts);
  CHECK(w_ext.value == 0);
}

TEST_CASE("hermitian limit: zero winding off the spectrum") {
  ModelParams p;
  p.L = 13;
  p.mu = 0.0;
  p.U = 0.8;
  WindingOptions opts;
  opts.n_theta = 64;
  const auto w = winding_number(p, cplx(0.4, 0.3), opts);
  CHECK(w.value == 0);
}

TEST_CASE("two-boson windings match the trajectory oracle") {
  ModelParams p;
  p.L = 13;
  p.alpha = rational_alpha(p.L);
  p.mu = 1.5;
  WindingOptions opts;
  opts.n_theta = 128;

  for (const cplx eb : {cplx(0, 0), cplx(1.0, 0.5)}) {
    const auto w = winding_number(p, eb, opts);
    const double oracle_raw = trajectory_winding(p, eb, 256, Sector::two_boson);
    CHECK(std::abs(oracle_raw - std::lround(oracle_raw)) < 0.05);
    CHECK(w.value == std::lround(oracle_raw));
    CHECK(w.value != 0);  // PT-broken localized regime encircles the origin
    CHECK(std::abs(w.raw_phase - w.value) < 0.05);
    CHECK(w.closure_residual < 1e-3);
  }
}

TEST_CASE("free extended phase keeps w = 0") {
  ModelParams p;
  p.L = 13;
  p.alpha = rational_alpha(p.L);
  p.mu = 0.5;
  WindingOptions opts;
  opts.n_theta = 64;
  const auto w = winding_number(p, cplx(0, 0.2), opts);
  CHECK(w.value == 0);
}

TEST_CASE("dense and banded engines agree") {
  ModelParams p;
  p.L = 8;
  p.alpha = rational_alpha(p.L);
  p.mu = 1.4;
  p.U = 0.6;
  WindingOptions opts;
  opts.n_theta = 64;
  opts.engine = DetEngine::dense;
  opts.parallel = false;  // serial reference
  const auto wd = winding_number(p, cplx(0.3, 0.1), opts);
  opts.engine = DetEngine::banded;
  opts.parallel = true;
  const auto wb = winding_number(p, cplx(0.3, 0.1), opts);
  CHECK(wd.value == wb.value);
  CHECK(wd.raw_phase == doctest::Approx(wb.raw_phase).epsilon(1e-9));
}

TEST_CASE("base jitter leaves the winding unchanged") {
  ModelParams p;
  p.L = 13;
  p.alpha = rational_alpha(p.L);
  p.mu = 1.5;
  WindingOptions opts;
  opts.n_theta = 128;
  const cplx eb(0.0, 0.0);
  const int w0 = winding_number(p, eb, opts).value;
  for (double d : {-0.01, 0.01}) {
    CHECK(winding_number(p, eb + cplx(d, 0), opts).value == w0);
    CHECK(winding_number(p, eb + cplx(0, d), opts).value == w0);
  }
}

TEST_CASE("base energy selection follows the IPR extremes") {
  ModelParams p;
  p.L = 21;
  p.mu = 1.2;
  p.U = 0.8;
  const auto spec = eig(build_hamiltonian(p, build_basis(p.L)));
  const auto loc = summarize(spec, 0.01);
  const auto [eb1, eb2] = select_base_energies(spec, loc);
  const auto jmax =
      std::max_element(loc.ipr_per_state.begin(), loc.ipr_per_state.end()) -
      loc.ipr_per_state.begin();
  CHECK(eb1.real() == spec.eigenvalues[jmax].real());
  CHECK(eb1.imag() == 0.0);
  CHECK(eb2.imag() == 0.0);
}

TEST_CASE("n_theta validation") {
  ModelParams p;
  p.L = 5;
  WindingOptions opts;
  opts.n_theta = 16;
  CHECK_THROWS_AS(winding_number(p, cplx(0, 0), opts), invalid_parameter);
}

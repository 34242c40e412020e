#include <doctest.h>

#include "nhqc/model.hpp"
#include "nhqc/spectral.hpp"
#include "support.hpp"

using namespace nhqc;

TEST_CASE("basis ordering and dimension") {
  const auto b = build_basis(3);
  CHECK(b.dim() == 6);
  const std::vector<std::pair<int, int>> want = {{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}};
  CHECK(b.pairs == want);
  for (std::size_t n = 0; n < b.dim(); ++n)
    CHECK(b.index_of(b.pairs[n].first, b.pairs[n].second) == static_cast<int>(n));
  CHECK(b.index_of(3, 1) == b.index_of(1, 3));

  CHECK(build_basis(89).dim() == 4005);
  CHECK(build_basis(144).dim() == 10440);
  CHECK_THROWS_AS(build_basis(1), invalid_parameter);
}

TEST_CASE("hermitian at mu = 0") {
  ModelParams p;
  p.L = 8;
  p.U = 0.7;
  p.J = 1.3;
  p.theta = 1.1;
  const auto H = build_hamiltonian(p, build_basis(p.L));
  const double scale = H.mat.cwiseAbs().maxCoeff();
  CHECK((H.mat - H.mat.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * scale);
}

TEST_CASE("free two-boson Hamiltonian matches kinetic symmetrization") {
  ModelParams p;
  p.L = 6;
  const auto basis = build_basis(p.L);
  const auto H = build_hamiltonian(p, basis);
  CHECK((H.mat - H.mat.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  // doublon-to-symmetric hops carry sqrt(2) J, plain hops carry J
  CHECK(H.mat(basis.index_of(2, 3), basis.index_of(2, 2)).real() ==
        doctest::Approx(-std::sqrt(2.0) * p.J));
  CHECK(H.mat(basis.index_of(2, 5), basis.index_of(2, 4)).real() == doctest::Approx(-p.J));
}

TEST_CASE("matches the tensor-product construction") {
  for (const auto boundary : {Boundary::periodic, Boundary::open}) {
    ModelParams p;
    p.L = 6;
    p.mu = 0.8;
    p.U = 1.7;
    p.theta = 0.9;
    p.J = 1.1;
    p.boundary = boundary;
    const auto basis = build_basis(p.L);
    const auto H = build_hamiltonian(p, basis);
    const auto H_ref = oracle::tensor_two_boson_hamiltonian(p, basis);
    CHECK((H.mat - H_ref).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("diagonal entries") {
  ModelParams p;
  p.L = 7;
  p.mu = 0.6;
  p.U = 2.3;
  const auto basis = build_basis(p.L);
  const auto H = build_hamiltonian(p, basis);
  for (int l = 1; l <= p.L; ++l) {
    const cplx want = -2.0 * p.mu * p.site_phase(l) + p.U;
    CHECK(std::abs(H.mat(basis.index_of(l, l), basis.index_of(l, l)) - want) < 1e-14);
  }
  // off-diagonal entries only between pairs differing by one single-site hop
  for (std::size_t m = 0; m < basis.dim(); ++m)
    for (std::size_t n = 0; n < basis.dim(); ++n) {
      if (m == n || H.mat(m, n) == cplx(0, 0)) continue;
      auto [a, b] = basis.pairs[m];
      auto [c, d] = basis.pairs[n];
      int from = 0, to = 0;
      if (a == c) { from = b; to = d; }
      else if (a == d) { from = b; to = c; }
      else if (b == c) { from = a; to = d; }
      else if (b == d) { from = a; to = c; }
      REQUIRE(from != 0);  // pairs share one site
      const int dist = std::abs(from - to);
      CHECK((dist == 1 || dist == p.L - 1));
    }
}

TEST_CASE("trace identity") {
  ModelParams p;
  p.L = 13;
  p.mu = 0.9;
  p.U = 1.4;
  p.theta = 0.4;
  const auto basis = build_basis(p.L);
  const auto H = build_hamiltonian(p, basis);
  cplx want = 0.0;
  for (const auto& [l, lp] : basis.pairs)
    want += -p.mu * (p.site_phase(l) + p.site_phase(lp));
  want += static_cast<double>(p.L) * p.U;
  CHECK(std::abs(H.mat.trace() - want) < 1e-10 * std::abs(want));
}

TEST_CASE("theta-periodicity with rational approximant alpha") {
  ModelParams p;
  p.L = 34;
  p.alpha = rational_alpha(p.L);  // 21/34
  p.mu = 0.9;
  p.U = 0.8;
  const auto basis = build_basis(p.L);
  auto p2 = p;
  p2.theta = 2.0 * M_PI;
  const auto w0 = eigvals(build_hamiltonian(p, basis));
  const auto w1 = eigvals(build_hamiltonian(p2, basis));
  std::vector<cplx> a(w0.data(), w0.data() + w0.size());
  std::vector<cplx> b(w1.data(), w1.data() + w1.size());
  CHECK(oracle::multiset_distance(a, b) < 1e-10);
}

TEST_CASE("single-particle Hamiltonian") {
  ModelParams p;
  p.L = 10;
  SUBCASE("mu = 0 is a hermitian hopping matrix") {
    const auto H = build_single_particle_hamiltonian(p);
    CHECK((H.mat - H.mat.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(H.mat(0, 9).real() == doctest::Approx(-p.J));  // PBC corner
    ModelParams po = p;
    po.boundary = Boundary::open;
    CHECK(build_single_particle_hamiltonian(po).mat(0, 9) == cplx(0, 0));
  }
  SUBCASE("spectrum tends to the real segment for mu < J") {
    // rational-approximant alpha: the irrational potential breaks the ring
    // reflection symmetry at finite L and leaves |Im| ~ 1e-3 residuals
    ModelParams ps = p;
    ps.L = 144;
    ps.mu = 0.5;
    ps.alpha = rational_alpha(ps.L);
    const auto w = eigvals(build_single_particle_hamiltonian(ps));
    CHECK(w.imag().cwiseAbs().maxCoeff() < 1e-6);
    CHECK(w.real().cwiseAbs().maxCoeff() < 2.0 * ps.J + 0.05);
  }
  SUBCASE("spectrum tends to the ellipse for mu > J") {
    ModelParams ps = p;
    ps.L = 144;
    ps.mu = 1.5;
    const auto w = eigvals(build_single_particle_hamiltonian(ps));
    const double h = std::log(ps.mu / ps.J);
    const double im_max = w.imag().cwiseAbs().maxCoeff();
    CHECK(im_max > 0.5 * 2.0 * ps.J * std::sinh(h));
    CHECK(im_max < 2.0 * ps.J * std::sinh(h) + 0.05);
  }
}

TEST_CASE("parameter validation") {
  ModelParams p;
  p.L = 1;
  CHECK_THROWS_AS(p.validate(), invalid_parameter);
  p.L = 5;
  p.alpha = 1.2;
  CHECK_THROWS_AS(p.validate(), invalid_parameter);
  p.alpha = 0.5;
  const auto basis = build_basis(4);
  CHECK_THROWS_AS(build_hamiltonian(p, basis), invalid_parameter);  // L mismatch
}

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace nhqc {

using cplx = std::complex<double>;

// ---------------------------------------------------------------- errors

struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Eigensolver failed to converge; carries the residual it reached.
struct solver_error : std::runtime_error {
  double residual;
  explicit solver_error(const std::string& what, double res = -1.0)
      : std::runtime_error(what), residual(res) {}
};

// Winding base energy sits on (or numerically indistinguishable from)
// an eigenvalue trajectory.
struct singular_base_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct degenerate_rate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct degenerate_initial_state_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct numerical_consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- params

enum class Boundary { periodic, open };

inline double golden_alpha() { return (std::sqrt(5.0) - 1.0) / 2.0; }

// Best rational approximant of alpha with denominator exactly L.
// For Fibonacci L this reproduces F_m / F_{m+1} (e.g. 55/89, 89/144) and the
// onsite potential becomes exactly L-periodic, closing the twist loop.
inline double rational_alpha(int L, double alpha = golden_alpha()) {
  return std::round(alpha * L) / static_cast<double>(L);
}

struct ModelParams {
  double J = 1.0;      // hopping amplitude
  double mu = 0.0;     // quasiperiodic gain/loss amplitude
  double alpha = golden_alpha();
  double U = 0.0;      // onsite two-body interaction
  int L = 2;           // lattice length
  double theta = 0.0;  // phase twist, enters onsite phases as theta/L
  Boundary boundary = Boundary::periodic;

  void validate() const {
    if (L < 2) throw invalid_parameter("ModelParams: L must be >= 2");
    if (!(alpha > 0.0 && alpha < 1.0))
      throw invalid_parameter("ModelParams: alpha must lie in (0, 1)");
    if (!(theta >= 0.0 && theta <= 2.0 * M_PI + 1e-12))
      throw invalid_parameter("ModelParams: theta must lie in [0, 2*pi]");
    if (!std::isfinite(J) || !std::isfinite(mu) || !std::isfinite(U))
      throw invalid_parameter("ModelParams: non-finite parameter");
  }

  // onsite potential phase factor e^{i(2*pi*alpha*l + theta/L)}, l is 1-based
  cplx site_phase(int l) const {
    const double arg = 2.0 * M_PI * alpha * l + theta / L;
    return {std::cos(arg), std::sin(arg)};
  }
};

}  // namespace nhqc

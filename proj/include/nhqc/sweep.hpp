#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nhqc/grid.hpp"
#include "nhqc/types.hpp"

namespace nhqc {

enum class Diagnostic { spectrum, pt, localization, winding, dynamics, entanglement, doublon };

const char* diagnostic_name(Diagnostic d);
std::optional<Diagnostic> diagnostic_from_name(const std::string& name);

struct RangeSpec {
  double min = 0.0, max = 0.0;
  int steps = 1;

  std::vector<double> values() const;
};

struct TimeGridSpec {
  double t_min = 0.1, t_max = 1e4;
  int per_decade = 64;
};

struct SweepConfig {
  ModelParams base;
  RangeSpec mu_range{0.0, 1.5, 16};
  RangeSpec u_range{0.0, 1.0, 11};
  std::set<Diagnostic> diagnostics{Diagnostic::pt};
  double epsilon_im = 1e-6;
  double tau_loc = 0.01;
  int n_theta = 256;
  TimeGridSpec time_grid;
  std::string output_dir = "out";
  int parallelism = 0;  // 0: NHQC_WORKERS env var, else hardware threads

  // test hook: the cell at these (mu index, U index) coordinates throws
  std::optional<std::pair<int, int>> fail_inject;
};

// Grid runner. Cells are independent; failures are caught per cell and
// recorded, never aborting the grid. Completed cells found on disk with a
// matching config hash are reused instead of recomputed.
PhaseGrid run_sweep(const SweepConfig& config);

int resolve_workers(int requested);

}  // namespace nhqc

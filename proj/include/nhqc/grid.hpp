#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nhqc/types.hpp"

namespace nhqc {

struct PTDiagnostics {
  double max_abs_imag = 0.0;
  double rho_im = 0.0;
  int d_im = 0;
  double epsilon_im = 0.0;
};

enum class Phase { Extended, Critical, Localized };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Extended: return "extended";
    case Phase::Critical: return "critical";
    default: return "localized";
  }
}

// slim per-cell localization record (the full per-state IPR list is not
// retained at grid level)
struct LocalizationStats {
  double ipr_max = 0.0, ipr_min = 0.0, ipr_ave = 0.0, npr_ave = 0.0, zeta = 0.0;
  double tau_loc = 0.0;
  Phase phase = Phase::Extended;
};

struct WindingStats {
  int w1 = 0, w2 = 0;
  double raw_phase1 = 0.0, raw_phase2 = 0.0;
  double e_b1 = 0.0, e_b2 = 0.0;
};

struct CellResult {
  double mu = 0.0, U = 0.0;
  bool ok = false;
  std::string error;
  std::optional<PTDiagnostics> pt;
  std::optional<LocalizationStats> loc;
  std::optional<WindingStats> winding;
  double wall_seconds = 0.0;
};

struct PhaseGrid {
  std::vector<double> mu_values;
  std::vector<double> u_values;
  std::vector<CellResult> cells;  // index = iu * mu_values.size() + imu
  std::string config_hash;
  std::string software_version;

  CellResult& cell(std::size_t imu, std::size_t iu) {
    return cells[iu * mu_values.size() + imu];
  }
  const CellResult& cell(std::size_t imu, std::size_t iu) const {
    return cells[iu * mu_values.size() + imu];
  }
};

}  // namespace nhqc

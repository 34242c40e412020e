#include "nhqc/sweep.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "nhqc/doublon.hpp"
#include "nhqc/dynamics.hpp"
#include "nhqc/entanglement.hpp"
#include "nhqc/io.hpp"
#include "nhqc/lapack.hpp"
#include "nhqc/localization.hpp"
#include "nhqc/topology.hpp"
#include "nhqc/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace nhqc {

const char* diagnostic_name(Diagnostic d) {
  switch (d) {
    case Diagnostic::spectrum: return "spectrum";
    case Diagnostic::pt: return "pt";
    case Diagnostic::localization: return "localization";
    case Diagnostic::winding: return "winding";
    case Diagnostic::dynamics: return "dynamics";
    case Diagnostic::entanglement: return "entanglement";
    default: return "doublon";
  }
}

std::optional<Diagnostic> diagnostic_from_name(const std::string& name) {
  for (Diagnostic d : {Diagnostic::spectrum, Diagnostic::pt, Diagnostic::localization,
                       Diagnostic::winding, Diagnostic::dynamics, Diagnostic::entanglement,
                       Diagnostic::doublon})
    if (name == diagnostic_name(d)) return d;
  return std::nullopt;
}

std::vector<double> RangeSpec::values() const {
  if (steps < 1) throw invalid_parameter("RangeSpec: steps must be >= 1");
  if (min > max) throw invalid_parameter("RangeSpec: min must be <= max");
  std::vector<double> v(steps);
  for (int i = 0; i < steps; ++i)
    v[i] = (steps == 1) ? min : min + (max - min) * i / (steps - 1);
  return v;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NHQC_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

namespace {

std::string cell_filename(std::size_t imu, std::size_t iu) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "cell_%04zu_%04zu", imu, iu);
  return buf;
}

struct CellContext {
  const SweepConfig& cfg;
  const FockBasis& basis;
  std::string hash;
  std::string cells_dir;
};

CellResult compute_cell(const CellContext& ctx, std::size_t imu, std::size_t iu, double mu,
                        double U) {
  const auto t0 = std::chrono::steady_clock::now();
  CellResult cell;
  cell.mu = mu;
  cell.U = U;
  try {
    if (ctx.cfg.fail_inject && ctx.cfg.fail_inject->first == static_cast<int>(imu) &&
        ctx.cfg.fail_inject->second == static_cast<int>(iu))
      throw std::runtime_error("injected failure");

    ModelParams p = ctx.cfg.base;
    p.mu = mu;
    p.U = U;
    const auto& diags = ctx.cfg.diagnostics;
    const bool need_vectors = diags.count(Diagnostic::localization) ||
                              diags.count(Diagnostic::winding) ||
                              diags.count(Diagnostic::dynamics) ||
                              diags.count(Diagnostic::entanglement) ||
                              diags.count(Diagnostic::doublon);
    const bool need_inverse =
        diags.count(Diagnostic::dynamics) || diags.count(Diagnostic::entanglement);

    const HamiltonianMatrix H = build_hamiltonian(p, ctx.basis);
    SpectralDecomposition spec;
    Eigen::VectorXcd evs;
    if (need_vectors) {
      spec = eig(H, {.with_inverse = need_inverse});
      evs = spec.eigenvalues;
    } else {
      evs = eigvals(H);
    }

    if (diags.count(Diagnostic::pt)) cell.pt = pt_diagnostics(evs, ctx.cfg.epsilon_im);

    std::optional<LocalizationSummary> loc;
    if (diags.count(Diagnostic::localization) || diags.count(Diagnostic::winding)) {
      loc = summarize(spec, ctx.cfg.tau_loc);
      if (diags.count(Diagnostic::localization)) cell.loc = loc->stats();
    }

    if (diags.count(Diagnostic::winding)) {
      WindingOptions wopts;
      wopts.n_theta = ctx.cfg.n_theta;
      wopts.parallel = false;  // cells already run in parallel
      const auto wp = winding_pair(p, spec, *loc, wopts);
      cell.winding = WindingStats{wp.w1.value,
                                  wp.w2.value,
                                  wp.w1.raw_phase,
                                  wp.w2.raw_phase,
                                  wp.w1.base_energy.real(),
                                  wp.w2.base_energy.real()};
    }

    const std::string stem = ctx.cells_dir + "/" + cell_filename(imu, iu);
    if (diags.count(Diagnostic::spectrum)) {
      const std::vector<double>* iprs = loc ? &loc->ipr_per_state : nullptr;
      io::write_text_if_changed(stem + "_spectrum.csv", io::spectrum_csv(evs, iprs, ctx.hash));
      json sidecar{{"model", io::params_to_json(p)},
                   {"config", ctx.hash},
                   {"version", kVersion}};
      if (need_vectors) sidecar["residual"] = spec.residual;
      io::write_text_if_changed(stem + "_spectrum.json", sidecar.dump(2) + "\n");
    }

    if (diags.count(Diagnostic::dynamics) || diags.count(Diagnostic::entanglement)) {
      const auto times = log_time_grid(ctx.cfg.time_grid.t_min, ctx.cfg.time_grid.t_max,
                                       ctx.cfg.time_grid.per_decade);
      const auto psi0 = initial_doublon_state(ctx.basis);
      if (diags.count(Diagnostic::dynamics)) {
        const auto trace = propagate(spec, ctx.basis, psi0, times);
        io::write_text_if_changed(stem + "_trace.csv", io::trace_csv(trace, ctx.hash));
        const auto fc = jump_forecast(spec, ctx.basis, psi0, 4);
        io::write_text_if_changed(stem + "_forecast.csv", io::forecast_csv(fc, ctx.hash));
        json jt{{"predicted_jump_times", fc.predicted_jump_times}, {"config", ctx.hash}};
        io::write_text_if_changed(stem + "_jumps.json", jt.dump(2) + "\n");
      }
      if (diags.count(Diagnostic::entanglement)) {
        const auto trace = ee_trace(spec, ctx.basis, psi0, times);
        io::write_text_if_changed(stem + "_ee.csv", io::ee_csv(trace, ctx.hash));
      }
    }

    if (diags.count(Diagnostic::doublon)) {
      const auto band = doublon_band(spec, ctx.basis, 0.9);
      std::vector<double> weights(band.size());
      for (std::size_t r = 0; r < band.size(); ++r)
        weights[r] = doublon_weight(spec.right_vectors.col(band[r]), ctx.basis);
      io::write_text_if_changed(stem + "_doublon.csv",
                                io::doublon_csv(spec, band, weights, ctx.hash));
      if (U != 0.0) {
        ModelParams pe = p;
        const auto heff = build_effective_hamiltonian(pe);
        HamiltonianMatrix hm{heff.mat, pe};
        io::write_text_if_changed(stem + "_heff.csv", io::heff_csv(eigvals(hm), ctx.hash));
      }
    }

    cell.ok = true;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error = e.what();
  }
  cell.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cell;
}

}  // namespace

PhaseGrid run_sweep(const SweepConfig& config) {
  PhaseGrid grid;
  grid.mu_values = config.mu_range.values();
  grid.u_values = config.u_range.values();
  grid.config_hash = io::config_hash(config);
  grid.software_version = kVersion;
  grid.cells.resize(grid.mu_values.size() * grid.u_values.size());

  io::ensure_dir(config.output_dir);
  const std::string cells_dir = config.output_dir + "/cells";
  io::ensure_dir(cells_dir);
  {  // writability probe
    std::ofstream probe(config.output_dir + "/.write_probe");
    if (!probe) throw invalid_parameter("run_sweep: output_dir is not writable");
  }
  fs::remove(config.output_dir + "/.write_probe");

  const FockBasis basis = build_basis(config.base.L);
  const CellContext ctx{config, basis, grid.config_hash, cells_dir};

  const int workers = resolve_workers(config.parallelism);
  lapack::set_blas_threads(1);

  const auto n_mu = grid.mu_values.size();
  const auto n_cells = grid.cells.size();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::size_t idx = 0; idx < n_cells; ++idx) {
    const std::size_t imu = idx % n_mu;
    const std::size_t iu = idx / n_mu;
    const std::string cell_path = cells_dir + "/" + cell_filename(imu, iu) + ".json";

    // resume: reuse completed cells carrying the same config hash
    if (fs::exists(cell_path)) {
      try {
        const json j = json::parse(io::read_text(cell_path));
        if (j.value("config", "") == grid.config_hash && j.value("ok", false)) {
          grid.cells[idx] = io::cell_from_json(j);
          continue;
        }
      } catch (const std::exception&) {
        // unreadable cache entry: recompute
      }
    }

    CellResult cell =
        compute_cell(ctx, imu, iu, grid.mu_values[imu], grid.u_values[iu]);
    json j = io::cell_to_json(cell);
    j["config"] = grid.config_hash;
    io::write_text_if_changed(cell_path, j.dump(2) + "\n");
    grid.cells[idx] = std::move(cell);
  }

  // single-threaded finalizer: merged tables in deterministic cell order
  if (config.diagnostics.count(Diagnostic::pt))
    io::write_text_if_changed(config.output_dir + "/pt.csv", io::pt_grid_csv(grid));
  if (config.diagnostics.count(Diagnostic::localization))
    io::write_text_if_changed(config.output_dir + "/localization.csv",
                              io::localization_grid_csv(grid));
  if (config.diagnostics.count(Diagnostic::winding))
    io::write_text_if_changed(config.output_dir + "/winding.csv", io::winding_grid_csv(grid));

  int failures = 0;
  double total_wall = 0.0;
  for (const auto& c : grid.cells) {
    if (!c.ok) ++failures;
    total_wall += c.wall_seconds;
  }
  json meta{{"version", kVersion},
            {"config", grid.config_hash},
            {"mu_values", grid.mu_values},
            {"u_values", grid.u_values},
            {"cells", grid.cells.size()},
            {"failures", failures},
            {"total_cell_seconds", total_wall},
            {"workers", workers}};
  io::write_text_if_changed(config.output_dir + "/grid.json", meta.dump(2) + "\n");
  return grid;
}

}  // namespace nhqc

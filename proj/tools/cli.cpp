#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>

#include "nhqc/doublon.hpp"
#include "nhqc/dynamics.hpp"
#include "nhqc/entanglement.hpp"
#include "nhqc/io.hpp"
#include "nhqc/lapack.hpp"
#include "nhqc/localization.hpp"
#include "nhqc/sweep.hpp"
#include "nhqc/topology.hpp"
#include "nhqc/version.hpp"

namespace nhqc {

namespace {

struct Opts {
  SweepConfig cfg;          // carries model params and tool knobs
  bool alpha_rational = false;
  bool eigenvalues_only = false;
  bool single_particle = false;
  std::vector<double> base;  // --base re [im]
  int top_k = 4;
  double w_min = 0.9;
  double avg_from = -1.0, avg_to = -1.0;
  std::string diagnostics = "pt,localization";
  bool desk = false;
  std::string reproduce_id;
};

void add_model_flags(CLI::App* cmd, Opts& o) {
  auto& p = o.cfg.base;
  cmd->add_option("--config", [&o](const std::vector<std::string>& vals) {
        o.cfg = io::load_sweep_config(vals.back());
        return true;
      },
      "JSON config file; command-line flags override its values")
      ->option_text("FILE")
      ->trigger_on_parse();
  cmd->add_option("--L", p.L, "lattice length");
  cmd->add_option("--mu", p.mu, "quasiperiodic potential amplitude");
  cmd->add_option("--U", p.U, "onsite interaction");
  cmd->add_option("--J", p.J, "hopping amplitude");
  cmd->add_option("--alpha", p.alpha, "potential frequency");
  cmd->add_flag("--alpha-rational", o.alpha_rational,
                "replace alpha by its best rational approximant with denominator L");
  cmd->add_option("--theta", p.theta, "phase twist");
  cmd->add_option("--boundary", [&p](const std::vector<std::string>& vals) {
        if (vals.back() == "periodic") p.boundary = Boundary::periodic;
        else if (vals.back() == "open") p.boundary = Boundary::open;
        else throw CLI::ValidationError("--boundary", "must be 'periodic' or 'open'");
        return true;
      })
      ->option_text("periodic|open");
  cmd->add_option("--out,-o", o.cfg.output_dir, "output directory");
  cmd->add_option("--workers", o.cfg.parallelism, "worker count (0: NHQC_WORKERS or hardware)");
  cmd->add_option("--epsilon-im", o.cfg.epsilon_im, "imaginary-part zero threshold");
  cmd->add_option("--tau-loc", o.cfg.tau_loc, "IPR localization threshold");
  cmd->add_option("--n-theta", o.cfg.n_theta, "twist samples for winding numbers");
  cmd->add_option("--t-min", o.cfg.time_grid.t_min);
  cmd->add_option("--t-max", o.cfg.time_grid.t_max);
  cmd->add_option("--per-decade", o.cfg.time_grid.per_decade, "time samples per decade");
}

ModelParams resolved_params(const Opts& o) {
  ModelParams p = o.cfg.base;
  if (o.alpha_rational) p.alpha = rational_alpha(p.L, p.alpha);
  p.validate();
  return p;
}

// single-point runs reuse the sweep hash with degenerate ranges so every
// output file names the configuration that produced it
std::string point_hash(const Opts& o, const ModelParams& p, Diagnostic d) {
  SweepConfig c = o.cfg;
  c.base = p;
  c.mu_range = {p.mu, p.mu, 1};
  c.u_range = {p.U, p.U, 1};
  c.diagnostics = {d};
  return io::config_hash(c);
}

int cmd_spectrum(const Opts& o) {
  const ModelParams p = resolved_params(o);
  const auto basis = build_basis(p.L);
  const auto H = build_hamiltonian(p, basis);
  const std::string hash = point_hash(o, p, Diagnostic::spectrum);
  io::ensure_dir(o.cfg.output_dir);

  nlohmann::json sidecar{{"model", io::params_to_json(p)}, {"version", kVersion}, {"config", hash}};
  Eigen::VectorXcd evs;
  if (o.eigenvalues_only) {
    evs = eigvals(H);
    io::write_text_if_changed(o.cfg.output_dir + "/spectrum.csv",
                              io::spectrum_csv(evs, nullptr, hash));
  } else {
    const auto spec = eig(H);
    evs = spec.eigenvalues;
    const auto loc = summarize(spec, o.cfg.tau_loc);
    io::write_text_if_changed(o.cfg.output_dir + "/spectrum.csv",
                              io::spectrum_csv(evs, &loc.ipr_per_state, hash));
    sidecar["residual"] = spec.residual;
    sidecar["localization"] = {{"ipr_max", loc.ipr_max},   {"ipr_min", loc.ipr_min},
                               {"ipr_ave", loc.ipr_ave},   {"npr_ave", loc.npr_ave},
                               {"zeta", loc.zeta},         {"phase", phase_name(loc.phase)}};
  }
  const auto pt = pt_diagnostics(evs, o.cfg.epsilon_im);
  sidecar["pt"] = {{"max_abs_imag", pt.max_abs_imag}, {"rho_im", pt.rho_im}, {"d_im", pt.d_im}};
  io::write_text_if_changed(o.cfg.output_dir + "/spectrum.json", sidecar.dump(2) + "\n");
  std::printf("spectrum: D=%d  max|Im E|=%g  rho_im=%g  -> %s\n", static_cast<int>(evs.size()),
              pt.max_abs_imag, pt.rho_im, o.cfg.output_dir.c_str());
  return 0;
}

int cmd_phase_diagram(Opts& o) {
  if (o.alpha_rational) o.cfg.base.alpha = rational_alpha(o.cfg.base.L, o.cfg.base.alpha);
  o.cfg.diagnostics.clear();
  for (const auto& name : CLI::detail::split(o.diagnostics, ',')) {
    const auto d = diagnostic_from_name(name);
    if (!d) throw invalid_parameter("unknown diagnostic '" + name + "'");
    o.cfg.diagnostics.insert(*d);
  }
  const auto grid = run_sweep(o.cfg);

  int failures = 0;
  for (const auto& c : grid.cells)
    if (!c.ok) ++failures;
  if (o.cfg.diagnostics.count(Diagnostic::pt)) {
    const auto boundary = extract_pt_boundary(grid, o.cfg.epsilon_im);
    std::string csv = io::file_header(grid.config_hash) + "U,mu_c\n";
    for (const auto& b : boundary) {
      csv += io::fmt(b.U) + ',';
      csv += b.mu_c ? io::fmt(*b.mu_c) : std::string("nan");
      csv += '\n';
    }
    io::write_text_if_changed(o.cfg.output_dir + "/boundary.csv", csv);
  }
  std::printf("phase-diagram: %zu cells (%d failed) -> %s\n", grid.cells.size(), failures,
              o.cfg.output_dir.c_str());
  if (failures == static_cast<int>(grid.cells.size())) {
    std::fprintf(stderr, "error: every cell failed; first error: %s\n",
                 grid.cells.front().error.c_str());
    return 1;
  }
  return 0;
}

int cmd_winding(const Opts& o) {
  const ModelParams p = resolved_params(o);
  io::ensure_dir(o.cfg.output_dir);
  WindingOptions wopts;
  wopts.n_theta = o.cfg.n_theta;

  if (!o.base.empty()) {
    const cplx eb(o.base[0], o.base.size() > 1 ? o.base[1] : 0.0);
    wopts.sector = o.single_particle ? Sector::single_particle : Sector::two_boson;
    const auto w = winding_number(p, eb, wopts);
    std::printf("w(E_B=%g%+gi) = %d  (raw %.4f, %d samples)\n", eb.real(), eb.imag(), w.value,
                w.raw_phase, w.n_theta);
    return 0;
  }

  const auto basis = build_basis(p.L);
  const auto spec = eig(build_hamiltonian(p, basis));
  const auto loc = summarize(spec, o.cfg.tau_loc);
  const auto wp = winding_pair(p, spec, loc, wopts);
  const std::string hash = point_hash(o, p, Diagnostic::winding);
  std::string csv = io::file_header(hash) + "mu,U,w1,w2,raw_phase1,raw_phase2,E_B1,E_B2\n";
  csv += io::fmt(p.mu) + ',' + io::fmt(p.U) + ',' + std::to_string(wp.w1.value) + ',' +
         std::to_string(wp.w2.value) + ',' + io::fmt(wp.w1.raw_phase) + ',' +
         io::fmt(wp.w2.raw_phase) + ',' + io::fmt(wp.w1.base_energy.real()) + ',' +
         io::fmt(wp.w2.base_energy.real()) + '\n';
  io::write_text_if_changed(o.cfg.output_dir + "/winding.csv", csv);
  std::printf("winding: (w1, w2) = (%d, %d) -> %s\n", wp.w1.value, wp.w2.value,
              o.cfg.output_dir.c_str());
  return 0;
}

int cmd_evolve(const Opts& o) {
  const ModelParams p = resolved_params(o);
  const auto basis = build_basis(p.L);
  const auto spec = eig(build_hamiltonian(p, basis), {.with_inverse = true});
  const auto psi0 = initial_doublon_state(basis);
  const auto times =
      log_time_grid(o.cfg.time_grid.t_min, o.cfg.time_grid.t_max, o.cfg.time_grid.per_decade);
  const auto trace = propagate(spec, basis, psi0, times);
  const auto fc = jump_forecast(spec, basis, psi0, o.top_k);

  const std::string hash = point_hash(o, p, Diagnostic::dynamics);
  io::ensure_dir(o.cfg.output_dir);
  io::write_text_if_changed(o.cfg.output_dir + "/trace.csv", io::trace_csv(trace, hash));
  io::write_text_if_changed(o.cfg.output_dir + "/forecast.csv", io::forecast_csv(fc, hash));
  nlohmann::json jt{{"predicted_jump_times", fc.predicted_jump_times},
                    {"config", hash},
                    {"model", io::params_to_json(p)}};
  io::write_text_if_changed(o.cfg.output_dir + "/jumps.json", jt.dump(2) + "\n");
  std::printf("evolve: %zu times, %zu predicted jumps (", times.size(),
              fc.predicted_jump_times.size());
  for (double t : fc.predicted_jump_times) std::printf(" %.0f", t);
  std::printf(" ) -> %s\n", o.cfg.output_dir.c_str());
  return 0;
}

int cmd_entropy(const Opts& o) {
  const ModelParams p = resolved_params(o);
  const auto basis = build_basis(p.L);
  const auto spec = eig(build_hamiltonian(p, basis), {.with_inverse = true});
  const auto times =
      log_time_grid(o.cfg.time_grid.t_min, o.cfg.time_grid.t_max, o.cfg.time_grid.per_decade);
  const auto trace = ee_trace(spec, basis, initial_doublon_state(basis), times);

  const double from = o.avg_from > 0 ? o.avg_from : o.cfg.time_grid.t_max / 10.0;
  const double to = o.avg_to > 0 ? o.avg_to : o.cfg.time_grid.t_max;
  const auto [sn, sc] = averaged_ee(trace, from, to);

  const std::string hash = point_hash(o, p, Diagnostic::entanglement);
  io::ensure_dir(o.cfg.output_dir);
  io::write_text_if_changed(o.cfg.output_dir + "/ee.csv", io::ee_csv(trace, hash));
  std::string avg = io::file_header(hash) + "mu,U,s_num_bar,s_conf_bar\n";
  avg += io::fmt(p.mu) + ',' + io::fmt(p.U) + ',' + io::fmt(sn) + ',' + io::fmt(sc) + '\n';
  io::write_text_if_changed(o.cfg.output_dir + "/ee_averaged.csv", avg);
  std::printf("entropy: s_num_bar=%.4f s_conf_bar=%.4f over [%g, %g] -> %s\n", sn, sc, from, to,
              o.cfg.output_dir.c_str());
  return 0;
}

int cmd_doublon(const Opts& o) {
  const ModelParams p = resolved_params(o);
  const auto basis = build_basis(p.L);
  const auto heff = build_effective_hamiltonian(p);  // rejects U = 0 up front
  const auto spec = eig(build_hamiltonian(p, basis));
  const auto band = doublon_band(spec, basis, o.w_min);
  std::vector<double> weights(band.size());
  for (std::size_t r = 0; r < band.size(); ++r)
    weights[r] = doublon_weight(spec.right_vectors.col(band[r]), basis);

  const std::string hash = point_hash(o, p, Diagnostic::doublon);
  io::ensure_dir(o.cfg.output_dir);
  io::write_text_if_changed(o.cfg.output_dir + "/doublon.csv",
                            io::doublon_csv(spec, band, weights, hash));
  io::write_text_if_changed(o.cfg.output_dir + "/heff.csv",
                            io::heff_csv(eigvals(HamiltonianMatrix{heff.mat, p}), hash));
  std::printf("doublon: band of %zu states (w_min=%g) -> %s\n", band.size(), o.w_min,
              o.cfg.output_dir.c_str());
  return 0;
}

int cmd_reproduce(Opts& o);

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"exact diagonalization toolkit for two interacting bosons in a "
               "non-Hermitian quasiperiodic lattice"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  Opts o;
  std::string action;

  auto* sp = app.add_subcommand("spectrum", "eigenvalues, IPRs and PT diagnostics at one point");
  add_model_flags(sp, o);
  sp->add_flag("--eigenvalues-only", o.eigenvalues_only, "skip eigenvectors and IPRs");
  sp->callback([&] { action = "spectrum"; });

  auto* pd = app.add_subcommand("phase-diagram", "sweep a (mu, U) grid of diagnostics");
  add_model_flags(pd, o);
  pd->add_option("--mu-min", o.cfg.mu_range.min);
  pd->add_option("--mu-max", o.cfg.mu_range.max);
  pd->add_option("--mu-steps", o.cfg.mu_range.steps);
  pd->add_option("--u-min", o.cfg.u_range.min);
  pd->add_option("--u-max", o.cfg.u_range.max);
  pd->add_option("--u-steps", o.cfg.u_range.steps);
  pd->add_option("--diagnostics", o.diagnostics,
                 "comma list: spectrum,pt,localization,winding,dynamics,entanglement,doublon");
  pd->callback([&] { action = "phase-diagram"; });

  auto* wd = app.add_subcommand("winding", "spectral winding numbers at one point");
  add_model_flags(wd, o);
  wd->add_option("--base", o.base, "explicit base energy (re [im]) instead of (w1, w2)")
      ->expected(1, 2);
  wd->add_flag("--single-particle", o.single_particle, "use the L x L single-particle model");
  wd->callback([&] { action = "winding"; });

  auto* ev = app.add_subcommand("evolve", "postselected wavepacket evolution and jump forecast");
  add_model_flags(ev, o);
  ev->add_option("--top-k", o.top_k, "states ranked by Im E in the forecast");
  ev->callback([&] { action = "evolve"; });

  auto* en = app.add_subcommand("entropy", "entanglement entropy dynamics and averages");
  add_model_flags(en, o);
  en->add_option("--avg-from", o.avg_from, "averaging window start (default t_max/10)");
  en->add_option("--avg-to", o.avg_to, "averaging window end (default t_max)");
  en->callback([&] { action = "entropy"; });

  auto* db = app.add_subcommand("doublon", "doublon band vs the effective Hamiltonian");
  add_model_flags(db, o);
  db->add_option("--w-min", o.w_min, "doublon weight threshold");
  db->callback([&] { action = "doublon"; });

  auto* rp = app.add_subcommand("reproduce", "run a pinned figure/table configuration");
  add_model_flags(rp, o);
  rp->add_option("id", o.reproduce_id, "fig2c|fig3|fig4|fig6|fig7|tableII|fig10")->required();
  rp->add_flag("--desk", o.desk, "reduced desk-scale variant (L=34, coarser grids)");
  rp->callback([&] { action = "reproduce"; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (action.empty()) {
    std::fputs(app.help().c_str(), stdout);
    return 0;
  }

  try {
    if (action == "spectrum") return cmd_spectrum(o);
    if (action == "phase-diagram") return cmd_phase_diagram(o);
    if (action == "winding") return cmd_winding(o);
    if (action == "evolve") return cmd_evolve(o);
    if (action == "entropy") return cmd_entropy(o);
    if (action == "doublon") return cmd_doublon(o);
    if (action == "reproduce") return cmd_reproduce(o);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}

int run_cli(int argc, char** argv) {
  return run_cli(std::vector<std::string>(argv + 1, argv + argc));
}

namespace {

int cmd_reproduce(Opts& o) {
  const std::string& id = o.reproduce_id;
  if (o.cfg.output_dir == "out") o.cfg.output_dir = "out/reproduce_" + id;
  SweepConfig& cfg = o.cfg;

  auto sweep_preset = [&](int L_paper, std::set<Diagnostic> diags, RangeSpec mu, RangeSpec u) {
    cfg.base.L = o.desk ? 34 : L_paper;
    cfg.diagnostics = std::move(diags);
    cfg.mu_range = mu;
    cfg.u_range = u;
    if (o.desk) {
      cfg.mu_range.steps = std::min(cfg.mu_range.steps, 16);
      cfg.u_range.steps = std::min(cfg.u_range.steps, 11);
    }
    const auto grid = run_sweep(cfg);
    if (cfg.diagnostics.count(Diagnostic::pt)) {
      const auto boundary = extract_pt_boundary(grid, cfg.epsilon_im);
      std::string csv = io::file_header(grid.config_hash) + "U,mu_c\n";
      for (const auto& b : boundary) {
        csv += io::fmt(b.U) + ',' + (b.mu_c ? io::fmt(*b.mu_c) : std::string("nan")) + '\n';
      }
      io::write_text_if_changed(cfg.output_dir + "/boundary.csv", csv);
    }
    int failures = 0;
    for (const auto& c : grid.cells)
      if (!c.ok) ++failures;
    std::printf("reproduce %s: %zu cells (%d failed) -> %s\n", id.c_str(), grid.cells.size(),
                failures, cfg.output_dir.c_str());
    return 0;
  };

  auto point_preset = [&](int L_paper, double mu, double U, const std::string& action) {
    cfg.base.L = o.desk ? 34 : L_paper;
    cfg.base.mu = mu;
    cfg.base.U = U;
    Opts po = o;
    po.cfg = cfg;
    if (action == "evolve") return cmd_evolve(po);
    if (action == "entropy") return cmd_entropy(po);
    return cmd_doublon(po);
  };

  if (id == "fig2c")
    return sweep_preset(144, {Diagnostic::pt}, {0.0, 1.5, 31}, {0.0, 1.0, 21});
  if (id == "fig3")
    return sweep_preset(144, {Diagnostic::pt, Diagnostic::localization}, {0.0, 1.5, 31},
                        {0.0, 1.0, 21});
  if (id == "fig4")
    return sweep_preset(89, {Diagnostic::pt, Diagnostic::localization, Diagnostic::winding},
                        {0.0, 1.5, 16}, {0.0, 1.0, 11});
  if (id == "fig10")
    return sweep_preset(89, {Diagnostic::pt}, {0.0, 0.3, 16}, {2.0, 20.0, 10});
  if (id == "fig6") {
    cfg.time_grid = {0.1, 1e4, 64};
    for (double mu : {0.5, 1.0, 1.5}) {
      cfg.output_dir = o.cfg.output_dir + "/mu_" + io::fmt(mu);
      if (const int rc = point_preset(89, mu, 0.8, "evolve")) return rc;
    }
    return 0;
  }
  if (id == "fig7") {
    cfg.time_grid = {0.1, 1e4, o.desk ? 16 : 32};
    for (double U : {0.0, 0.8})
      for (double mu : {0.5, 1.0, 1.5}) {
        cfg.output_dir =
            o.cfg.output_dir + "/U_" + io::fmt(U) + "_mu_" + io::fmt(mu);
        if (const int rc = point_preset(89, mu, U, "entropy")) return rc;
      }
    return 0;
  }
  if (id == "tableII") {
    cfg.time_grid = {0.1, 1e4, 16};
    return point_preset(89, 1.5, 0.8, "evolve");
  }
  throw invalid_parameter("reproduce: unknown id '" + id + "'");
}

}  // namespace

}  // namespace nhqc

// Micro-benchmark comparing the serial reference implementations against the
// OpenMP / structured kernels on the hot paths: winding determinant sweeps,
// batch IPR evaluation, and grid sweeps.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>

#include "nhqc/io.hpp"
#include "nhqc/lapack.hpp"
#include "nhqc/localization.hpp"
#include "nhqc/sweep.hpp"
#include "nhqc/topology.hpp"

using namespace nhqc;

namespace {

double now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename F>
double timed(F&& f) {
  const double t0 = now();
  f();
  return now() - t0;
}

}  // namespace

int main() {
  lapack::set_blas_threads(1);
  std::printf("nhqc bench (%d hardware threads)\n\n", omp_get_max_threads());

  {
    ModelParams p;
    p.L = 34;
    p.alpha = rational_alpha(p.L);
    p.mu = 1.3;
    p.U = 0.8;
    WindingOptions opts;
    opts.n_theta = 64;
    const cplx eb(0.5, 0.2);

    WindingResult wd, wbs, wbp;
    opts.engine = DetEngine::dense;
    opts.parallel = false;
    const double t_dense = timed([&] { wd = winding_number(p, eb, opts); });
    opts.engine = DetEngine::banded;
    const double t_band = timed([&] { wbs = winding_number(p, eb, opts); });
    opts.parallel = true;
    const double t_band_par = timed([&] { wbp = winding_number(p, eb, opts); });

    std::printf("winding det sweep  L=%d n_theta=%d  (w=%d, agreement %s)\n", p.L, opts.n_theta,
                wd.value, (wd.value == wbs.value && wbs.value == wbp.value) ? "ok" : "BROKEN");
    std::printf("  dense LU, serial         %8.2f ms\n", 1e3 * t_dense);
    std::printf("  banded+correction, serial %7.2f ms   (%.1fx vs dense)\n", 1e3 * t_band,
                t_dense / t_band);
    std::printf("  banded+correction, OpenMP %7.2f ms   (%.1fx vs serial banded)\n\n",
                1e3 * t_band_par, t_band / t_band_par);
  }

  {
    ModelParams p;
    p.L = 55;
    p.mu = 1.0;
    p.U = 0.8;
    const auto basis = build_basis(p.L);
    const auto spec = eig(build_hamiltonian(p, basis));
    const auto D = spec.dim();

    std::vector<double> serial(D), parallel(D);
    const double t_serial = timed([&] {
      for (Eigen::Index j = 0; j < D; ++j) serial[j] = ipr(spec.right_vectors.col(j));
    });
    const double t_par = timed([&] {
#pragma omp parallel for schedule(static)
      for (Eigen::Index j = 0; j < D; ++j) parallel[j] = ipr(spec.right_vectors.col(j));
    });
    double max_diff = 0.0;
    for (Eigen::Index j = 0; j < D; ++j)
      max_diff = std::max(max_diff, std::abs(serial[j] - parallel[j]));
    std::printf("batch IPR  D=%d  (max diff %g)\n", static_cast<int>(D), max_diff);
    std::printf("  serial  %8.2f ms\n  OpenMP  %8.2f ms   (%.1fx)\n\n", 1e3 * t_serial,
                1e3 * t_par, t_serial / t_par);
  }

  {
    namespace fs = std::filesystem;
    SweepConfig cfg;
    cfg.base.L = 21;
    cfg.mu_range = {0.2, 1.4, 5};
    cfg.u_range = {0.0, 0.8, 4};
    cfg.diagnostics = {Diagnostic::pt, Diagnostic::localization};

    const auto dir1 = fs::temp_directory_path() / "nhqc_bench_serial";
    const auto dir2 = fs::temp_directory_path() / "nhqc_bench_parallel";
    fs::remove_all(dir1);
    fs::remove_all(dir2);

    cfg.output_dir = dir1.string();
    cfg.parallelism = 1;
    const double t1 = timed([&] { run_sweep(cfg); });
    cfg.output_dir = dir2.string();
    cfg.parallelism = omp_get_max_threads();
    const double tn = timed([&] { run_sweep(cfg); });

    const bool same = io::read_text((dir1 / "pt.csv").string()) ==
                      io::read_text((dir2 / "pt.csv").string());
    std::printf("grid sweep  L=%d  %d cells (outputs %s)\n", cfg.base.L,
                cfg.mu_range.steps * cfg.u_range.steps, same ? "identical" : "DIFFER");
    std::printf("  1 worker   %7.2f s\n  %d workers  %7.2f s   (%.1fx)\n", t1,
                cfg.parallelism, tn, t1 / tn);
    fs::remove_all(dir1);
    fs::remove_all(dir2);
  }
  return 0;
}

// Benchmarks the OpenMP-parallel Monte Carlo kernels against their serial
// reference implementations and verifies that both produce identical results
// (the estimators use counter-based substreams with fixed-block reduction, so
// the arithmetic must not depend on the worker count).
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cmix/estimators.hpp"

using namespace cmix;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool report(const char* name, double t_serial, double t_parallel, bool identical) {
  std::printf("%-24s serial %7.3f s   parallel %7.3f s   speedup %5.2fx   %s\n", name,
              t_serial, t_parallel, t_serial / t_parallel,
              identical ? "results identical" : "RESULTS DIFFER");
  return identical;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t samples = 200000;
  for (int i = 1; i + 1 < argc; i += 2)
    if (std::strcmp(argv[i], "--samples") == 0) samples = std::strtoull(argv[i + 1], nullptr, 10);
#ifdef _OPENMP
  std::printf("OpenMP with up to %d threads, %zu samples/cell\n", omp_get_max_threads(), samples);
#else
  std::printf("built without OpenMP, %zu samples/cell\n", samples);
#endif

  bool ok = true;
  McConfig cfg;
  cfg.samples = samples;
  cfg.grid_x = cfg.grid_v = 16;
  cfg.stream = {7, 0};

  ContractionReport cs, cp;
  const double tc_s = seconds([&] { cs = contraction_estimate_serial(100.0, 0.25, cfg); });
  const double tc_p = seconds([&] { cp = contraction_estimate(100.0, 0.25, cfg); });
  bool same = cs.worst_estimate.mean == cp.worst_estimate.mean && cs.per_cell.size() == cp.per_cell.size();
  for (std::size_t i = 0; same && i < cs.per_cell.size(); ++i)
    same = cs.per_cell[i].mean == cp.per_cell[i].mean;
  ok &= report("contraction (pair kick)", tc_s, tc_p, same);

  ContractionReport ps, pp;
  const double tp_s = seconds([&] { ps = p_contraction_estimate_serial(100.0, 0.25, cfg); });
  const double tp_p = seconds([&] { pp = p_contraction_estimate(100.0, 0.25, cfg); });
  same = ps.worst_estimate.mean == pp.worst_estimate.mean;
  for (std::size_t i = 0; same && i < ps.per_cell.size(); ++i)
    same = ps.per_cell[i].mean == pp.per_cell[i].mean;
  ok &= report("contraction (sine model)", tp_s, tp_p, same);

  const TwoPointState z{{0.4, 1.3}, {0.4, 1.3 + 1e-3}};
  McConfig dcfg;
  dcfg.samples = samples * 16;
  dcfg.stream = {7, 1};
  Estimate ds, dp;
  const double td_s = seconds([&] { ds = drift_check_serial(100.0, 0.25, z, dcfg); });
  const double td_p = seconds([&] { dp = drift_check(100.0, 0.25, z, dcfg); });
  ok &= report("drift", td_s, td_p, ds.mean == dp.mean && ds.std_error == dp.std_error);

  LyapunovReport ls, lp;
  const double tl_s =
      seconds([&] { ls = lyapunov_exponent_serial(100.0, samples, 64, {7, 2}); });
  const double tl_p = seconds([&] { lp = lyapunov_exponent(100.0, samples, 64, {7, 2}); });
  ok &= report("lyapunov", tl_s, tl_p,
               ls.lambda1.mean == lp.lambda1.mean && ls.lambda1.std_error == lp.lambda1.std_error);

  return ok ? 0 : 1;
}

// Compares the serial reference trial loops against the OpenMP versions on a
// fixed workload and checks that both give identical results.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "conjfid/entangle.hpp"
#include "conjfid/rng.hpp"
#include "conjfid/roofs.hpp"

using namespace conjfid;

namespace {

template <typename F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled at build time\n");
#endif

  Rng rng(20240817);
  const DensityOperator rho{random_density(4, rng)};
  const AntilinearOp theta = hill_wootters();
  const int oracle_trials = 4000;

  double serial_val = 0, parallel_val = 0;
  const double t_serial = time_ms([&] {
    serial_val = roof_oracle_serial(rho, theta, RoofMode::min, oracle_trials, 7);
  });
  const double t_parallel = time_ms([&] {
    parallel_val = roof_oracle(rho, theta, RoofMode::min, oracle_trials, 7);
  });
  std::printf("roof_oracle (min, %d trials): serial %.1f ms, parallel %.1f ms, speedup %.2fx\n",
              oracle_trials, t_serial, t_parallel, t_serial / t_parallel);
  std::printf("  values: serial %.15g parallel %.15g %s\n", serial_val,
              parallel_val, serial_val == parallel_val ? "(identical)" : "(MISMATCH)");

  const int search_trials = 120;
  SearchResult ss, sp;
  const double s_serial = time_ms([&] {
    ss = sup_concurrence_search_serial(rho, 2, 2, search_trials, 11);
  });
  const double s_parallel = time_ms([&] {
    sp = sup_concurrence_search(rho, 2, 2, search_trials, 11);
  });
  std::printf("sup_concurrence_search (%d restarts): serial %.1f ms, parallel %.1f ms, speedup %.2fx\n",
              search_trials, s_serial, s_parallel, s_serial / s_parallel);
  std::printf("  values: serial %.15g parallel %.15g %s\n", ss.value, sp.value,
              ss.value == sp.value ? "(identical)" : "(MISMATCH)");

  const bool ok = serial_val == parallel_val && ss.value == sp.value;
  return ok ? 0 : 1;
}

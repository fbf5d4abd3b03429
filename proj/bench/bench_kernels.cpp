// Timing harness for the convolution kernel and curve assembly: serial
// reference vs the parallel implementation at 1 and N threads.
#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <vector>

#include "pdc/copula.hpp"
#include "pdc/curves.hpp"
#include "pdc/dps.hpp"
#include "pdc/rng.hpp"
#include "pdc/synth.hpp"

using namespace pdc;

namespace {

double time_best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

Dps random_dps(std::uint64_t seed, std::size_t bins, double step) {
  CounterRng rng(seed, 0);
  std::vector<double> m(bins);
  double s = 0.0;
  for (auto& x : m) {
    x = 0.01 + rng.u01();
    s += x;
  }
  for (auto& x : m) x /= s;
  return Dps{0.0, step, std::move(m)};
}

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

int main() {
  const int hw = max_threads();
  std::printf("hardware threads available to the runtime: %d\n\n", hw);

  const Dps a = random_dps(1, 600, 2.0);
  const Dps b = random_dps(2, 600, 2.0);
  const GaussianCopula cop = copula_from_tau(0.6);

  volatile double sink = 0.0;
  const int reps = 5;

  const double t_ref = time_best_of(reps, [&] {
    const Dps r = ddc_add_reference(a, b, cop);
    sink = sink + r.masses[0];
  });
  set_threads(1);
  const double t_one = time_best_of(reps, [&] {
    const Dps r = ddc_add(a, b, cop);
    sink = sink + r.masses[0];
  });
  set_threads(hw);
  const double t_all = time_best_of(reps, [&] {
    const Dps r = ddc_add(a, b, cop);
    sink = sink + r.masses[0];
  });
  std::printf("dependent convolution, 600x600 bins (best of %d):\n", reps);
  std::printf("  reference loop      %8.3f ms\n", t_ref * 1e3);
  std::printf("  kernel, 1 thread    %8.3f ms   (%.2fx vs reference)\n", t_one * 1e3,
              t_ref / t_one);
  std::printf("  kernel, %d thread%s  %8.3f ms   (%.2fx vs reference)\n\n", hw,
              hw > 1 ? "s" : " ", t_all * 1e3, t_ref / t_all);

  SynthConfig cfg;
  cfg.days = 120;
  const TimePanel panel = make_synth_panel(cfg);
  const double step = default_step(panel, 400);
  const FittedModel model = fit_model(panel, step);

  set_threads(1);
  const double t_pdc_one = time_best_of(3, [&] {
    const ProbCurve c = build_pdc(model);
    sink = sink + c.periods[0].masses[0];
  });
  set_threads(hw);
  const double t_pdc_all = time_best_of(3, [&] {
    const ProbCurve c = build_pdc(model);
    sink = sink + c.periods[0].masses[0];
  });
  std::printf("daily curve assembly, 120 days x 24 periods, 400 bins (best of 3):\n");
  std::printf("  1 thread            %8.3f ms\n", t_pdc_one * 1e3);
  std::printf("  %d thread%s           %8.3f ms   (%.2fx)\n", hw, hw > 1 ? "s" : " ",
              t_pdc_all * 1e3, t_pdc_one / t_pdc_all);

  return sink == 12345.6789 ? 1 : 0;  // keep the results observable
}

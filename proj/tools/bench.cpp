// Compares the OpenMP kernels against their serial reference implementations
// on the three data-parallel hot paths: deviation grid scans, gradient-field
// sampling and parameter sweeps.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "npg/harness.hpp"
#include "npg/parallel.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double time_ms(F&& work) {
  const auto start = Clock::now();
  work();
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-28s %10.1f ms %10.1f ms %8.2fx  results %s\n", name.c_str(), serial_ms,
              parallel_ms, serial_ms / parallel_ms, identical ? "identical" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled (OMP_NUM_THREADS controls the thread count)\n");
#else
  std::printf("built without OpenMP; both columns run the serial path\n");
#endif
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  const npg::MarketParams params;

  {
    // Unilateral-deviation scan of the two-class access game at a fine grid.
    const npg::ClassParams cls;
    auto u1 = [&](double ph) {
      return npg::utilities_multiclass(params, cls, 0.0, ph, 0.35).u1;
    };
    const std::size_t n = 1 << 22;
    npg::GridMax serial_result, parallel_result;
    const double serial_ms =
        time_ms([&] { serial_result = npg::grid_max_serial(u1, 0.0, params.pmax(), n); });
    const double parallel_ms =
        time_ms([&] { parallel_result = npg::grid_max(u1, 0.0, params.pmax(), n); });
    const bool same = serial_result.index == parallel_result.index &&
                      serial_result.x == parallel_result.x &&
                      serial_result.value == parallel_result.value;
    row("deviation grid scan", serial_ms, parallel_ms, same);
  }

  {
    auto utot = [&](double p1, double p2) {
      const double total = p1 + p2;
      return std::max(0.0, params.D0 - params.d * total) * total;
    };
    const npg::Box region{0.0, params.pmax(), 0.0, params.pmax()};
    const int n = 1500;
    std::vector<npg::FieldSample> serial_samples, parallel_samples;
    const double serial_ms = time_ms(
        [&] { serial_samples = npg::gradient_field_serial(utot, region, n, n, 1e-6); });
    const double parallel_ms =
        time_ms([&] { parallel_samples = npg::gradient_field(utot, region, n, n, 1e-6); });
    bool same = serial_samples.size() == parallel_samples.size();
    for (std::size_t i = 0; same && i < serial_samples.size(); ++i)
      same = serial_samples[i].gx == parallel_samples[i].gx &&
             serial_samples[i].gy == parallel_samples[i].gy;
    row("gradient field 1500x1500", serial_ms, parallel_ms, same);
  }

  {
    npg::RunConfig config;
    config.scenario = "multiclass-competition";
    config.sweep_spec = npg::SweepSpec{"gamma", 0.2, 10.0, 0.05};
    npg::SweepTable serial_table, parallel_table;
    const double serial_ms = time_ms([&] { serial_table = npg::sweep_serial(config); });
    const double parallel_ms = time_ms([&] { parallel_table = npg::sweep(config); });
    std::ostringstream a, b;
    serial_table.write_csv(a);
    parallel_table.write_csv(b);
    row("multiclass sweep (197 pts)", serial_ms, parallel_ms, a.str() == b.str());
  }

  return 0;
}
